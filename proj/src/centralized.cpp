#include "d2d/centralized.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "d2d/simplex.hpp"
#include "d2d/spectral.hpp"

namespace d2d {

namespace {

void erase_index(Eigen::VectorXd& v, int j) {
    const int n = static_cast<int>(v.size());
    for (int i = j; i + 1 < n; ++i) v(i) = v(i + 1);
    v.conservativeResize(n - 1);
}

void erase_row_col(Eigen::MatrixXd& m, int j) {
    const int n = static_cast<int>(m.rows());
    for (int r = j; r + 1 < n; ++r) m.row(r) = m.row(r + 1);
    for (int c = j; c + 1 < n; ++c) m.col(c) = m.col(c + 1);
    m.conservativeResize(n - 1, n - 1);
}

// column to drop next: largest Euclidean norm among D2D columns,
// lowest index on ties
int worst_column(const Eigen::MatrixXd& f) {
    int best = -1;
    double best_norm = -1.0;
    for (int k = 1; k < f.cols(); ++k) {
        const double nrm = f.col(k).norm();
        if (nrm > best_norm) {
            best_norm = nrm;
            best = k;
        }
    }
    return best;
}

} // namespace

void ConstraintSystem::remove(int j) {
    erase_row_col(f, j);
    erase_index(b, j);
    erase_index(g0c, j - 1);
    erase_index(p_max, j);
    active.erase(active.begin() + j);
}

ConstraintSystem build_constraints(const NetworkRealization& real, const SystemParams& params) {
    return build_constraints(gain_matrix(real, params.pathloss_exp), params);
}

ConstraintSystem build_constraints(const Eigen::MatrixXd& g, const SystemParams& params) {
    const int n = static_cast<int>(g.rows());
    const int k = n - 1;

    ConstraintSystem cs;
    cs.f = Eigen::MatrixXd::Zero(n, n);
    cs.b.resize(n);
    cs.g0c.resize(k);
    cs.p_max.resize(n);
    cs.noise_w = params.noise_w;
    cs.active.resize(n);

    for (int r = 0; r < n; ++r) {
        const double direct = g(r, r);
        if (direct <= 0.0) throw std::domain_error("build_constraints: degenerate direct link");
        const double beta = (r == 0) ? params.beta_cell : params.beta_d2d;
        for (int t = 0; t < n; ++t)
            if (t != r) cs.f(r, t) = beta * g(r, t) / direct;
        cs.b(r) = beta * params.noise_w / direct;
        cs.p_max(r) = (r == 0) ? params.p_max_cell_w : params.p_max_d2d_w;
        cs.active[r] = r;
    }
    cs.g0 = g(0, 0);
    for (int t = 1; t < n; ++t) cs.g0c(t - 1) = g(0, t);
    return cs;
}

bool is_feasible(const ConstraintSystem& cs) {
    return spectral_radius(cs.f) < 1.0 - kRhoFeasibilityMargin;
}

AdmissionTrace admission_control_traced(ConstraintSystem cs) {
    AdmissionTrace out;
    out.rho_trace.push_back(spectral_radius(cs.f));
    while (out.rho_trace.back() >= 1.0 - kRhoFeasibilityMargin) {
        const int j = worst_column(cs.f);
        out.removed.push_back(cs.active[j]);
        cs.remove(j);
        out.rho_trace.push_back(spectral_radius(cs.f));
    }
    out.cs = std::move(cs);
    return out;
}

ConstraintSystem admission_control(const ConstraintSystem& cs) {
    return admission_control_traced(cs).cs;
}

Eigen::VectorXd solve_power(const ConstraintSystem& cs) {
    const int n = cs.size();
    if (n == 1) {
        // cellular alone: the objective is monotone in p0
        if (cs.b(0) > cs.p_max(0) * (1.0 + 1e-12)) throw CapInfeasibleError();
        return Eigen::VectorXd::Constant(1, cs.p_max(0));
    }

    // Work in cap units q = p / p_max so the tableau is well scaled:
    //   Ft(k,l) = F(k,l) p_max_l / p_max_k,  bt(k) = b(k) / p_max_k.
    Eigen::MatrixXd ft(n, n);
    Eigen::VectorXd bt(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) ft(r, c) = cs.f(r, c) * cs.p_max(c) / cs.p_max(r);
        bt(r) = cs.b(r) / cs.p_max(r);
    }

    // Denominator gains in cap units; the equality row is rescaled by its
    // largest coefficient.
    Eigen::VectorXd den = Eigen::VectorXd::Zero(n + 1); // [w..., t]
    for (int k = 1; k < n; ++k) den(k) = cs.g0c(k - 1) * cs.p_max(k);
    den(n) = cs.noise_w;
    const double row_scale = den.maxCoeff();

    const int nvars = n + 1;               // w_0..w_{n-1}, t
    const int nrows = 2 + n + n;           // equality pair + SINR rows + caps
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nrows, nvars);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nrows);
    int row = 0;

    if (row_scale > 0.0) {
        // denominator normalization: den'w + sigma^2 t = row_scale
        a.row(row).head(nvars) = den.transpose() / row_scale;
        rhs(row) = 1.0;
        ++row;
        a.row(row) = -a.row(row - 1);
        rhs(row) = -1.0;
        ++row;
    } else {
        // no interference path to the BS and no noise: the ratio objective
        // degenerates, pin t = 1 and solve the polytope directly
        a(row, n) = 1.0;
        rhs(row) = 1.0;
        ++row;
        a(row, n) = -1.0;
        rhs(row) = -1.0;
        ++row;
    }

    // (Ft - I) w + bt t <= 0
    for (int r = 0; r < n; ++r, ++row) {
        a.row(row).head(n) = ft.row(r);
        a(row, r) -= 1.0;
        a(row, n) = bt(r);
    }
    // w_k <= t
    for (int r = 0; r < n; ++r, ++row) {
        a(row, r) = 1.0;
        a(row, n) = -1.0;
    }

    Eigen::VectorXd obj = Eigen::VectorXd::Zero(nvars);
    obj(0) = 1.0;

    const LpResult lp = solve_lp(a, rhs, obj);
    if (lp.status != LpStatus::Optimal) throw CapInfeasibleError();

    const double t = lp.x(nvars - 1);
    if (!(t > 0.0)) throw CapInfeasibleError();

    Eigen::VectorXd p(n);
    for (int k = 0; k < n; ++k) {
        const double q = std::min(std::max(lp.x(k) / t, 0.0), 1.0);
        p(k) = q * cs.p_max(k);
    }
    return p;
}

ControlOutcome centralized_control(const NetworkRealization& real, const SystemParams& params) {
    return centralized_control(gain_matrix(real, params.pathloss_exp), params);
}

ControlOutcome centralized_control(const Eigen::MatrixXd& gains, const SystemParams& params) {
    const int k = static_cast<int>(gains.rows()) - 1;
    ControlOutcome out;
    out.profile = PowerProfile::Zero(k + 1);

    AdmissionTrace trace = admission_control_traced(build_constraints(gains, params));
    Eigen::VectorXd p;
    for (;;) {
        try {
            p = solve_power(trace.cs);
            break;
        } catch (const CapInfeasibleError&) {
            if (trace.cs.size() == 1) {
                // cellular alone can always transmit at its peak
                p = Eigen::VectorXd::Constant(1, trace.cs.p_max(0));
                break;
            }
            const int j = worst_column(trace.cs.f);
            trace.removed.push_back(trace.cs.active[j]);
            trace.cs.remove(j);
            trace.rho_trace.push_back(spectral_radius(trace.cs.f));
        }
    }

    for (int i = 0; i < trace.cs.size(); ++i) {
        const int orig = trace.cs.active[i];
        out.profile(orig) = p(i);
        if (orig > 0) out.admitted.push_back(orig);
    }
    out.rho_trace = std::move(trace.rho_trace);
    out.rho_final = out.rho_trace.back();
    const double signal = gains(0, 0) * out.profile(0);
    const double denom = gains.row(0).dot(out.profile) - signal + params.noise_w;
    out.cell_sinr = denom > 0.0 ? signal / denom
                                : (signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return out;
}

void save_constraints(std::ostream& os, const ConstraintSystem& cs) {
    const int n = cs.size();
    os.precision(17);
    os << "links " << n << "\n";
    os << "noise " << cs.noise_w << "\n";
    os << "g0 " << cs.g0 << "\n";
    os << "active";
    for (int i : cs.active) os << " " << i;
    os << "\n";
    auto dump_vec = [&](const char* tag, const Eigen::VectorXd& v) {
        os << tag;
        for (int i = 0; i < v.size(); ++i) os << " " << v(i);
        os << "\n";
    };
    dump_vec("b", cs.b);
    dump_vec("g0c", cs.g0c);
    dump_vec("p_max", cs.p_max);
    os << "f\n";
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) os << cs.f(r, c) << (c + 1 == n ? "" : " ");
        os << "\n";
    }
}

ConstraintSystem load_constraints(std::istream& is) {
    auto expect = [&](const std::string& tag) {
        std::string got;
        if (!(is >> got) || got != tag)
            throw std::runtime_error("load_constraints: expected '" + tag + "'");
    };
    ConstraintSystem cs;
    int n = 0;
    expect("links");
    is >> n;
    if (n < 1) throw std::runtime_error("load_constraints: bad link count");
    expect("noise");
    is >> cs.noise_w;
    expect("g0");
    is >> cs.g0;
    expect("active");
    cs.active.resize(n);
    for (int& i : cs.active) is >> i;
    auto read_vec = [&](const char* tag, Eigen::VectorXd& v, int len) {
        expect(tag);
        v.resize(len);
        for (int i = 0; i < len; ++i) is >> v(i);
    };
    read_vec("b", cs.b, n);
    read_vec("g0c", cs.g0c, n - 1);
    read_vec("p_max", cs.p_max, n);
    expect("f");
    cs.f.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) is >> cs.f(r, c);
    if (!is) throw std::runtime_error("load_constraints: truncated input");
    return cs;
}

} // namespace d2d
