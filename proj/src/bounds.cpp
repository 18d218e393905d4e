#include "specvar/bounds.hpp"

#include <cmath>
#include <string>

#include "specvar/block_structure.hpp"
#include "specvar/error.hpp"

namespace specvar {

namespace {

constexpr std::array<std::string_view, 17> kNames = {
    "HW",    "SUN",   "LI_SUN", "XU1",   "XU2",   "XU_HERMITIAN", "SONG",  "LI_CHEN", "UP1_1",
    "UP1_2", "UP1_3", "UP2_1",  "UP2_2", "UP2_3", "UP3_1",        "UP3_2", "UP3_3",
};

constexpr const char* kZeroBranch = "zero perturbation";

void require_s(int s, int n, const char* name) {
    if (s < 1 || s > n) {
        throw DomainError(std::string("s-value ") + name + " = " + std::to_string(s) + " outside [1, " +
                          std::to_string(n) + "]");
    }
}

BoundInputs jordan_inputs(const JordanScalars& js) {
    BoundInputs in;
    in.n = js.n;
    in.p = js.p;
    in.m = js.m;
    in.delta_eq = js.delta_eq;
    in.norm_eq = js.norm_eq;
    in.abs_trace_e = std::sqrt(js.trace_term * js.n);
    return in;
}

bool zero(const JordanScalars& js) {
    return js.zero_perturbation || js.norm_eq == 0.0;
}

BoundResult make(BoundId id, double value, std::string branch, BoundInputs inputs) {
    BoundResult r;
    r.id = id;
    r.value = value;
    r.branch = std::move(branch);
    r.applicable = true;
    r.inputs = inputs;
    return r;
}

// The three shapes shared by UP1_k, UP2_k and UP3_k. `c_small` multiplies the
// small-perturbation branch and `c_large` the eps = 1 branch.
struct Family {
    const JordanScalars& js;

    double r() const { return static_cast<double>(js.n - js.p); }
    double large(double c) const {
        const double t = std::sqrt(r()) + js.delta_eq;
        return std::sqrt(c * t * t + js.trace_term);
    }

    // eps = ||E_Q||_F^{1/m}
    std::pair<double, const char*> by_norm(double c_small, double c_large) const {
        const double nq = js.norm_eq;
        if (nq < 1.0) {
            const double d = js.delta_eq;
            const double ratio = nq > 0.0 ? d * d / (nq * nq) : 0.0;
            const double inner = r() + 2.0 * std::sqrt(r()) * d + ratio;
            return {std::sqrt(c_small * inner * std::pow(nq, 2.0 / js.m) + js.trace_term), "||E_Q||_F < 1"};
        }
        return {large(c_large), "||E_Q||_F >= 1"};
    }

    // eps = delta(E_Q)^{1/m}
    std::pair<double, const char*> by_delta(double c_small, double c_large) const {
        const double d = js.delta_eq;
        if (d < 1.0) {
            const double inner = r() + 2.0 * std::sqrt(r()) * d + 1.0;
            return {std::sqrt(c_small * inner * std::pow(d, 2.0 / js.m) + js.trace_term), "delta(E_Q) < 1"};
        }
        return {large(c_large), "delta(E_Q) >= 1"};
    }

    // eps at the stationary point of Phi
    std::pair<double, const char*> by_stationary(double c_small, double c_large) const {
        if (stationary_condition_c1(js)) {
            const double d = js.delta_eq;
            const double m = static_cast<double>(js.m);
            const double base = (r() + 2.0 * std::sqrt(r()) * d) / (m - 1.0);
            const double value = m * c_small * std::pow(base, 1.0 - 1.0 / m) * std::pow(d, 2.0 / m);
            return {std::sqrt(value + js.trace_term), "C1"};
        }
        return {large(c_large), js.m == 1 ? "C2 (m = 1)" : "C2"};
    }
};

} // namespace

std::string_view to_string(BoundId id) {
    return kNames[static_cast<std::size_t>(id)];
}

std::optional<BoundId> parse_bound_id(std::string_view name) {
    for (std::size_t k = 0; k < kNames.size(); ++k) {
        if (kNames[k] == name) {
            return static_cast<BoundId>(k);
        }
    }
    return std::nullopt;
}

BoundResult inapplicable(BoundId id, std::string reason) {
    BoundResult r;
    r.id = id;
    r.applicable = false;
    r.reason = std::move(reason);
    return r;
}

JordanScalars JordanScalars::from(const PerturbationInstance& inst) {
    JordanScalars js;
    const auto& spec = inst.spec();
    js.n = spec.n();
    js.p = spec.p();
    js.m = spec.m();
    js.delta_eq = inst.delta_eq();
    js.norm_eq = inst.norm_eq();
    js.trace_term = inst.trace_term();
    js.zero_perturbation = inst.norm_eq() <= 1e-14 * (1.0 + inst.a().norm());
    return js;
}

bool stationary_condition_c1(const JordanScalars& js) {
    if (js.m < 2) {
        return false;
    }
    const double r = static_cast<double>(js.n - js.p);
    const double d = js.delta_eq;
    return r + 2.0 * std::sqrt(r) * d > static_cast<double>(js.m - 1) * d * d;
}

std::vector<BoundResult> normal_bounds(const NormalScalars& ns) {
    require_s(ns.s_tilde, ns.n, "s(A~)");
    BoundInputs in;
    in.n = ns.n;
    in.norm_e = ns.norm_e;
    in.delta_e = ns.delta_e;
    in.s_tilde = ns.s_tilde;

    const double n = static_cast<double>(ns.n);
    const double s = static_cast<double>(ns.s_tilde);
    const double fe = ns.norm_e;
    const double de2 = ns.delta_e * ns.delta_e;

    std::vector<BoundResult> out;
    if (ns.a_tilde_normal) {
        out.push_back(make(BoundId::HW, fe, "A and A~ normal", in));
    } else {
        out.push_back(inapplicable(BoundId::HW, "A~ is not normal"));
    }
    out.push_back(make(BoundId::SUN, std::sqrt(n) * fe, "A normal", in));
    out.push_back(make(BoundId::LI_SUN, std::sqrt(n - s + 1.0) * fe, "A normal", in));
    out.push_back(make(BoundId::XU1, std::sqrt(fe * fe + (n - 1.0) * de2), "A normal", in));
    out.push_back(make(BoundId::XU2, std::sqrt(fe * fe + (n - s) * de2), "A normal", in));
    if (ns.hermitian_a) {
        out.push_back(make(BoundId::XU_HERMITIAN, std::sqrt(fe * fe + de2), "A Hermitian", in));
    } else {
        out.push_back(inapplicable(BoundId::XU_HERMITIAN, "A is not Hermitian"));
    }
    return out;
}

std::vector<BoundResult> normal_bounds(const ComplexMatrix& e, const ComplexMatrix& a_tilde, bool hermitian_a,
                                       int s_tilde) {
    require_square(e, "normal_bounds E");
    if (a_tilde.rows() != e.rows() || a_tilde.cols() != e.cols()) {
        throw DimensionError("normal_bounds: E and A~ differ in shape");
    }
    NormalScalars ns;
    ns.n = static_cast<int>(e.rows());
    ns.norm_e = frobenius_norm(e);
    ns.delta_e = delta(e);
    ns.s_tilde = s_tilde;
    ns.hermitian_a = hermitian_a;
    ns.a_tilde_normal = is_normal(a_tilde, 1e-10);
    return normal_bounds(ns);
}

std::vector<BoundResult> baseline_bounds(const JordanScalars& js, int s1, int s2) {
    require_s(s1, js.n, "s1");
    require_s(s2, js.n, "s2");
    BoundInputs in = jordan_inputs(js);
    in.s1 = s1;
    in.s2 = s2;
    if (zero(js)) {
        return {make(BoundId::SONG, 0.0, kZeroBranch, in), make(BoundId::LI_CHEN, 0.0, kZeroBranch, in)};
    }
    const double n = static_cast<double>(js.n);
    const double r = static_cast<double>(js.n - js.p);
    const double sr = std::sqrt(r);
    const double nq = js.norm_eq;
    std::vector<BoundResult> out;
    if (nq < 1.0) {
        const double root = std::pow(nq, 1.0 / js.m);
        out.push_back(make(BoundId::SONG, std::sqrt(n) * (sr + 1.0) * root, "||E_Q||_F < 1", in));
        out.push_back(make(BoundId::LI_CHEN, std::sqrt(s1 * (r + 1.0 + 2.0 * sr * nq)) * root, "||E_Q||_F < 1", in));
    } else {
        out.push_back(make(BoundId::SONG, std::sqrt(n) * (sr + 1.0) * nq, "||E_Q||_F >= 1", in));
        out.push_back(
            make(BoundId::LI_CHEN, std::sqrt(s2 * (r + 2.0 * sr + nq)) * std::sqrt(nq), "||E_Q||_F >= 1", in));
    }
    return out;
}

std::vector<BoundResult> baseline_bounds(const PerturbationInstance& inst, int s1, int s2) {
    return baseline_bounds(JordanScalars::from(inst), s1, s2);
}

std::vector<BoundResult> new_bounds_complex(const JordanScalars& js, const SValues& s) {
    require_s(s.s1, js.n, "s1");
    require_s(s.s2, js.n, "s2");
    require_s(s.s3, js.n, "s3");
    require_s(s.s4, js.n, "s4");
    const BoundInputs base = jordan_inputs(js);
    BoundInputs in2 = base;
    in2.s1 = s.s1;
    in2.s2 = s.s2;
    in2.s3 = s.s3;
    in2.s4 = s.s4;

    const std::array<BoundId, 6> ids = {BoundId::UP1_1, BoundId::UP1_2, BoundId::UP1_3,
                                        BoundId::UP2_1, BoundId::UP2_2, BoundId::UP2_3};
    std::vector<BoundResult> out;
    if (zero(js)) {
        for (std::size_t k = 0; k < ids.size(); ++k) {
            out.push_back(make(ids[k], 0.0, kZeroBranch, k < 3 ? base : in2));
        }
        return out;
    }
    const Family f{js};
    const double n = static_cast<double>(js.n);
    auto push = [&](BoundId id, std::pair<double, const char*> vb, const BoundInputs& in) {
        out.push_back(make(id, vb.first, vb.second, in));
    };
    push(BoundId::UP1_1, f.by_norm(n, n), base);
    push(BoundId::UP1_2, f.by_delta(n, n), base);
    push(BoundId::UP1_3, f.by_stationary(n, n), base);
    push(BoundId::UP2_1, f.by_norm(s.s1, s.s2), in2);
    push(BoundId::UP2_2, f.by_delta(s.s3, s.s2), in2);
    push(BoundId::UP2_3, f.by_stationary(s.s4, s.s2), in2);
    return out;
}

std::vector<BoundResult> new_bounds_complex(const PerturbationInstance& inst, const SValues& s) {
    return new_bounds_complex(JordanScalars::from(inst), s);
}

std::vector<BoundResult> new_bounds_real(const JordanScalars& js, bool real_eigenvalues) {
    const std::array<BoundId, 3> ids = {BoundId::UP3_1, BoundId::UP3_2, BoundId::UP3_3};
    std::vector<BoundResult> out;
    if (!real_eigenvalues) {
        for (auto id : ids) {
            out.push_back(inapplicable(id, "A has non-real eigenvalues"));
        }
        return out;
    }
    const BoundInputs in = jordan_inputs(js);
    if (zero(js)) {
        for (auto id : ids) {
            out.push_back(make(id, 0.0, kZeroBranch, in));
        }
        return out;
    }
    const Family f{js};
    auto push = [&](BoundId id, std::pair<double, const char*> vb) { out.push_back(make(id, vb.first, vb.second, in)); };
    push(BoundId::UP3_1, f.by_norm(2.0, 2.0));
    push(BoundId::UP3_2, f.by_delta(2.0, 2.0));
    push(BoundId::UP3_3, f.by_stationary(2.0, 2.0));
    return out;
}

std::vector<BoundResult> new_bounds_real(const PerturbationInstance& inst) {
    return new_bounds_real(JordanScalars::from(inst), inst.spec().has_real_eigenvalues());
}

std::vector<BoundSlack> verify_instance(const std::vector<BoundResult>& results, double d2, double tolerance) {
    std::vector<BoundSlack> out;
    for (const auto& r : results) {
        if (!r.applicable) {
            continue;
        }
        BoundSlack s;
        s.id = r.id;
        s.value = r.value;
        s.slack = r.value - d2;
        s.violation = !(s.slack >= -tolerance * (1.0 + r.value));
        out.push_back(s);
    }
    return out;
}

} // namespace specvar
