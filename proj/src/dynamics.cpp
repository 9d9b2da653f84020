#include "chainscope/dynamics.hpp"

#include <cmath>

#include "chainscope/errors.hpp"

namespace chainscope {

double Speeds::operator[](int i) const {
    return i == 0 ? g1 : i == 1 ? g2 : i == 2 ? g3 : g4;
}

void Speeds::validate() const {
    for (int i = 0; i < 4; ++i) {
        if (!(operator[](i) > 0.0) || !std::isfinite(operator[](i)))
            throw InvalidParams("speeds.g" + std::to_string(i + 1) + " must be > 0");
    }
}

PriceState step_unchecked(const DynamicsSystem& sys, const PriceState& x) {
    const Speeds& s = sys.speeds;
    const ModelParams& p = sys.params;
    PriceState y;
    switch (sys.structure) {
        case PowerStructure::NG: {
            const auto m = marginal_profits_ng(x, p);
            y.k1 = x.k1 + s.g1 * x.k1 * m[0];
            y.k2 = x.k2 + s.g2 * x.k2 * m[1];
            y.w1 = x.w1 + s.g3 * x.w1 * m[2];
            y.w2 = x.w2 + s.g4 * x.w2 * m[3];
            break;
        }
        case PowerStructure::MS: {
            // Leader moves first; followers react to the fresh wholesale prices.
            const auto lm = ms_leader_marginals(x.w1, x.w2, p);
            y.w1 = x.w1 + s.g3 * x.w1 * lm[0];
            y.w2 = x.w2 + s.g4 * x.w2 * lm[1];
            const PriceState mid{x.k1, x.k2, y.w1, y.w2};
            const auto fm = marginal_profits_ng(mid, p);
            y.k1 = x.k1 + s.g1 * x.k1 * fm[0];
            y.k2 = x.k2 + s.g2 * x.k2 * fm[1];
            break;
        }
        case PowerStructure::RS: {
            // Margins move first; wholesale prices react to the fresh margins.
            const auto lm = retailer_marginals_rs(x.k1, x.k2, p);
            y.k1 = x.k1 + s.g1 * x.k1 * lm[0];
            y.k2 = x.k2 + s.g2 * x.k2 * lm[1];
            const PriceState mid{y.k1, y.k2, x.w1, x.w2};
            const auto fm = marginal_profits_ng(mid, p);
            y.w1 = x.w1 + s.g3 * x.w1 * fm[2];
            y.w2 = x.w2 + s.g4 * x.w2 * fm[3];
            break;
        }
    }
    return y;
}

PriceState step(const DynamicsSystem& sys, const PriceState& x) {
    if (!all_finite(x)) throw NonFiniteState("step input state is not finite");
    const PriceState y = step_unchecked(sys, x);
    if (!all_finite(y)) throw NonFiniteState("step produced a non-finite state");
    return y;
}

Eigen::Matrix4d jacobian(const DynamicsSystem& sys, const PriceState& x) {
    const Speeds& s = sys.speeds;
    const ModelParams& p = sys.params;
    const double mu = p.mu;
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    switch (sys.structure) {
        case PowerStructure::NG: {
            const auto m = marginal_profits_ng(x, p);
            // Rows of the marginal gradient in state order.
            const double D[4][4] = {{-2, mu, -1, mu},
                                    {mu, -2, mu, -1},
                                    {-1, mu, -2, 2 * mu},
                                    {mu, -1, 2 * mu, -2}};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    J(i, j) = (i == j ? 1.0 + s[i] * m[i] : 0.0) + s[i] * x[i] * D[i][j];
            break;
        }
        case PowerStructure::MS: {
            const double d = 4.0 - mu * mu;
            const auto lm = ms_leader_marginals(x.w1, x.w2, p);
            const double A = 1.0 + s.g3 * lm[0] - 2.0 * s.g3 * x.w1 * (2.0 - mu * mu) / d;
            const double B = s.g3 * x.w1 * 2.0 * mu / d;
            const double C = s.g4 * x.w2 * 2.0 * mu / d;
            const double D = 1.0 + s.g4 * lm[1] - 2.0 * s.g4 * x.w2 * (2.0 - mu * mu) / d;
            // Followers see the updated wholesale prices; chain rule through them.
            PriceState mid = x;
            mid.w1 = x.w1 + s.g3 * x.w1 * lm[0];
            mid.w2 = x.w2 + s.g4 * x.w2 * lm[1];
            const auto fm = marginal_profits_ng(mid, p);
            J(0, 0) = 1.0 + s.g1 * fm[0] - 2.0 * s.g1 * x.k1;
            J(0, 1) = s.g1 * x.k1 * mu;
            J(0, 2) = s.g1 * x.k1 * (-A + mu * C);
            J(0, 3) = s.g1 * x.k1 * (-B + mu * D);
            J(1, 0) = s.g2 * x.k2 * mu;
            J(1, 1) = 1.0 + s.g2 * fm[1] - 2.0 * s.g2 * x.k2;
            J(1, 2) = s.g2 * x.k2 * (mu * A - C);
            J(1, 3) = s.g2 * x.k2 * (mu * B - D);
            J(2, 2) = A;
            J(2, 3) = B;
            J(3, 2) = C;
            J(3, 3) = D;
            break;
        }
        case PowerStructure::RS: {
            const auto lm = retailer_marginals_rs(x.k1, x.k2, p);
            const double P = 1.0 + s.g1 * lm[0] - s.g1 * x.k1;
            const double Q = s.g1 * x.k1 * mu / 2.0;
            const double R = s.g2 * x.k2 * mu / 2.0;
            const double S = 1.0 + s.g2 * lm[1] - s.g2 * x.k2;
            PriceState mid = x;
            mid.k1 = x.k1 + s.g1 * x.k1 * lm[0];
            mid.k2 = x.k2 + s.g2 * x.k2 * lm[1];
            const auto fm = marginal_profits_ng(mid, p);
            J(0, 0) = P;
            J(0, 1) = Q;
            J(1, 0) = R;
            J(1, 1) = S;
            J(2, 0) = s.g3 * x.w1 * (-P + mu * R);
            J(2, 1) = s.g3 * x.w1 * (-Q + mu * S);
            J(2, 2) = 1.0 + s.g3 * fm[2] - 2.0 * s.g3 * x.w1;
            J(2, 3) = s.g3 * x.w1 * 2.0 * mu;
            J(3, 0) = s.g4 * x.w2 * (mu * P - R);
            J(3, 1) = s.g4 * x.w2 * (mu * Q - S);
            J(3, 2) = s.g4 * x.w2 * 2.0 * mu;
            J(3, 3) = 1.0 + s.g4 * fm[3] - 2.0 * s.g4 * x.w2;
            break;
        }
    }
    return J;
}

Eigen::Matrix4d jacobian_fd(const DynamicsSystem& sys, const PriceState& x, double h) {
    Eigen::Matrix4d J;
    for (int j = 0; j < 4; ++j) {
        PriceState lo = x, hi = x;
        lo[j] -= h;
        hi[j] += h;
        const PriceState a = step_unchecked(sys, lo), b = step_unchecked(sys, hi);
        for (int i = 0; i < 4; ++i) J(i, j) = (b[i] - a[i]) / (2.0 * h);
    }
    return J;
}

OrbitResult iterate(const DynamicsSystem& sys, const PriceState& x0, int transient, int keep,
                    double escape_radius) {
    OrbitResult out;
    out.states.reserve(keep > 0 ? keep : 0);
    PriceState x = x0;
    auto escaped = [&](const PriceState& s) {
        if (!all_finite(s)) return true;
        for (int i = 0; i < 4; ++i)
            if (std::abs(s[i]) > escape_radius) return true;
        return false;
    };
    if (escaped(x)) {
        out.diverged = true;
        return out;
    }
    for (int t = 0; t < transient; ++t) {
        x = step_unchecked(sys, x);
        ++out.steps_taken;
        if (escaped(x)) {
            out.diverged = true;
            return out;
        }
    }
    for (int t = 0; t < keep; ++t) {
        if (t > 0) {
            x = step_unchecked(sys, x);
            ++out.steps_taken;
            if (escaped(x)) {
                out.diverged = true;
                return out;
            }
        }
        out.states.push_back(x);
    }
    return out;
}

StabilityReport stability_at(const DynamicsSystem& sys, const PriceState& x) {
    const Eigen::Matrix4d J = jacobian(sys, x);
    StabilityReport r;
    Eigen::EigenSolver<Eigen::Matrix4d> es(J);
    double rad = 0.0;
    for (int i = 0; i < 4; ++i) {
        r.eigenvalues[i] = es.eigenvalues()(i);
        rad = std::max(rad, std::abs(r.eigenvalues[i]));
    }
    r.spectral_radius = rad;
    r.stable = rad < 1.0 - 1e-9;

    // Characteristic polynomial F(z) = z^4 + zeta3 z^3 + zeta2 z^2 + zeta1 z + zeta0
    // via trace power sums.
    const double t1 = J.trace();
    const double t2 = (J * J).trace();
    const double t3 = (J * J * J).trace();
    const double zeta3 = -t1;
    const double zeta2 = (t1 * t1 - t2) / 2.0;
    const double zeta1 = -(t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
    const double zeta0 = J.determinant();
    r.zeta = {zeta0, zeta1, zeta2, zeta3};

    const double f1 = 1.0 + zeta3 + zeta2 + zeta1 + zeta0;
    const double fm1 = 1.0 - zeta3 + zeta2 - zeta1 + zeta0;
    const double kappa3 = 1.0 - zeta0 * zeta0;
    const double kappa2 = zeta3 - zeta1 * zeta0;
    const double kappa1 = zeta3 - zeta2 * zeta0;
    const double kappa0 = zeta1 - zeta3 * zeta0;
    const double chi2 = kappa3 * kappa3 - kappa0 * kappa0;
    const double chi0 = kappa3 * kappa1 - kappa2 * kappa0;
    r.jury_f1_positive = f1 > 0.0;
    r.jury_fm1_negative = fm1 < 0.0;
    r.jury_fm1_positive = fm1 > 0.0;
    r.jury_zeta0_inside = std::abs(zeta0) < 1.0;
    r.jury_kappa_inside = std::abs(kappa0) < std::abs(kappa3);
    r.jury_chi_inside = std::abs(chi0) < std::abs(chi2);
    return r;
}

namespace {

// Affine first-order-condition system marginal(x) = M x + r for the given
// structure; a state is a fixed point iff every active component's row
// vanishes and every pinned component is zero.
void foc_system(const DynamicsSystem& sys, Eigen::Matrix4d& M, Eigen::Vector4d& r) {
    const double mu = sys.params.mu;
    const double a = sys.params.boost();
    const double eta = sys.params.eta;
    switch (sys.structure) {
        case PowerStructure::NG: {
            M << -2, mu, -1, mu, mu, -2, mu, -1, -1, mu, -2, 2 * mu, mu, -1, 2 * mu, -2;
            r << 1 + a, eta + a, 1 + a, eta + a;
            break;
        }
        case PowerStructure::MS: {
            const double d = 4.0 - mu * mu;
            M << -2, mu, -1, mu, mu, -2, mu, -1, 0, 0, -2 * (2 - mu * mu) / d, 2 * mu / d, 0, 0,
                2 * mu / d, -2 * (2 - mu * mu) / d;
            r << 1 + a, eta + a, (2 + eta * mu + a * (2 + mu)) / d,
                (2 * eta + mu + a * (2 + mu)) / d;
            break;
        }
        case PowerStructure::RS: {
            M << -1, mu / 2, 0, 0, mu / 2, -1, 0, 0, -1, mu, -2, 2 * mu, mu, -1, 2 * mu, -2;
            r << (1 + a) / 2, (eta + a) / 2, 1 + a, eta + a;
            break;
        }
    }
}

}  // namespace

FixedPointScan fixed_points(const DynamicsSystem& sys) {
    Eigen::Matrix4d M;
    Eigen::Vector4d r;
    foc_system(sys, M, r);

    FixedPointScan scan;
    for (int mask = 0; mask < 16; ++mask) {
        std::array<bool, 4> active{};
        std::vector<int> idx;
        for (int i = 0; i < 4; ++i) {
            active[i] = (mask >> i) & 1;
            if (active[i]) idx.push_back(i);
        }
        PriceState x{};
        if (!idx.empty()) {
            const int n = static_cast<int>(idx.size());
            Eigen::MatrixXd Ms(n, n);
            Eigen::VectorXd rs(n);
            for (int i = 0; i < n; ++i) {
                rs(i) = -r(idx[i]);
                for (int j = 0; j < n; ++j) Ms(i, j) = M(idx[i], idx[j]);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(Ms);
            if (!lu.isInvertible()) {
                scan.skipped_patterns.push_back(active);
                continue;
            }
            const Eigen::VectorXd sol = lu.solve(rs);
            for (int i = 0; i < n; ++i) x[idx[i]] = sol(i);
        }
        FixedPoint fp;
        fp.state = x;
        fp.active = active;
        fp.residual = max_abs_diff(step_unchecked(sys, x), x);
        fp.stability = stability_at(sys, x);
        scan.points.push_back(fp);
    }
    return scan;
}

}  // namespace chainscope
