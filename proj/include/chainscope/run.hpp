#pragma once

#include <string>
#include <vector>

#include "chainscope/config.hpp"

namespace chainscope {

extern const std::vector<std::string> kCommands;
bool is_command(const std::string& name);

struct RunResult {
    std::vector<std::string> files_written;  // paths relative to out_dir
    std::string summary;                     // human-readable digest for stdout
};

// Execute one command with a fully resolved config: validates, computes,
// writes manifest.txt + data CSVs (+ PPM images when cfg.plot) into
// cfg.out_dir. `preset_name` is echoed in the manifest ("" = none).
RunResult run_command(const std::string& command, const RunConfig& cfg,
                      const std::string& preset_name = "");

// The manifest content for a run (tool version, command, preset, full config,
// output list). Deterministic: no timestamps.
std::string manifest_text(const std::string& command, const RunConfig& cfg,
                          const std::string& preset_name,
                          const std::vector<std::string>& files_written);

}  // namespace chainscope
