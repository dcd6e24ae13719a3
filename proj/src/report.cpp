#include "psdist/report.hpp"

#include <charconv>
#include <cmath>

namespace psdist {

Json to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const ParamSet& p) {
    Json j;
    j["mode"] = to_string(p.mode);
    if (p.mode == ParamMode::Schedule) j["q"] = p.q;
    j["gamma"] = p.gamma;
    j["C"] = p.C;
    j["N"] = p.N;
    j["delta"] = p.delta;
    j["H"] = p.H;
    j["M"] = p.M;
    j["v"] = p.v;
    j["delta_too_large"] = p.delta_too_large;
    j["in_theorem_range"] = p.in_theorem_range;
    return j;
}

Json to_json(const GammaReport& r) {
    Json j;
    j["gamma_sum"] = r.gamma_sum;
    j["gamma1"] = r.gamma1;
    j["gamma2"] = r.gamma2;
    j["hits_weighted"] = r.hits_weighted;
    j["mass"] = r.mass;
    j["expected"] = r.expected;
    j["discrepancy_ratio"] = r.discrepancy_ratio;
    j["envelope"] = r.envelope;
    j["envelope_ratio"] = r.envelope_ratio;
    j["identity_residual"] = r.identity_residual;
    j["primes"] = r.primes;
    j["ps_primes"] = r.ps_primes;
    j["hits"] = r.hits;
    j["max_floor_identity_residual"] = r.max_floor_identity_residual;
    j["floor_identity_failures"] = r.floor_identity_failures;
    j["warnings"] = r.warnings;
    return j;
}

Json to_json(const EnvelopeAudit& audit) {
    Json rows = Json::array();
    for (const auto& row : audit.rows) {
        rows.push_back(Json{{"N", row.N},
                            {"gamma_sum", row.gamma_sum},
                            {"discrepancy_ratio", row.discrepancy_ratio},
                            {"envelope", row.envelope},
                            {"envelope_ratio", row.envelope_ratio}});
    }
    return Json{{"rows", rows}, {"nonincreasing", audit.nonincreasing}};
}

Json to_json(const ExpSumReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    return Json{{"value", to_json(r.value)}, {"abs", r.abs}, {"bound", r.bound}, {"ratio", r.ratio}, {"parameters", params}};
}

Json to_json(const VaughanParts& v) {
    return Json{{"v", v.v},
                {"U1", to_json(v.U1)},
                {"U2", to_json(v.U2)},
                {"U3", to_json(v.U3)},
                {"U4", to_json(v.U4)},
                {"reconstruction", to_json(v.reconstruction)},
                {"direct", to_json(v.direct)},
                {"residual", v.residual}};
}

Json to_json(const PsCount& c) {
    return Json{{"X", c.X}, {"count", c.count}, {"reference", c.reference}, {"ratio", c.ratio}};
}

std::string to_string(CfTermination t) {
    switch (t) {
        case CfTermination::ReachedLimit: return "reached_limit";
        case CfTermination::RationalInput: return "rational_input";
        case CfTermination::PrecisionLimit: return "precision_limit";
    }
    return "unknown";
}

Json to_json(const ConvergentList& list) {
    Json cs = Json::array();
    for (const auto& c : list.convergents) cs.push_back(Json{{"a", c.a}, {"q", c.q}});
    return Json{{"convergents", cs}, {"termination", to_string(list.termination)}};
}

Json to_json(const DirichletApprox& d) { return Json{{"a", d.a_h}, {"q", d.q_h}, {"Q", d.bound_Q}}; }

Json to_json(const SearchRecord& r) {
    return Json{{"p", r.p}, {"n", r.n}, {"dist", r.dist}, {"score", r.score}, {"is_record", r.is_record}};
}

Json to_json(const SearchSummary& s) {
    return Json{{"ps_primes", s.ps_primes},
                {"records", s.records},
                {"within_delta", s.within_delta},
                {"best_score", s.best_score},
                {"best_p", s.best_p},
                {"min_dist", s.min_dist},
                {"degenerate", s.degenerate},
                {"in_theorem_range", s.in_theorem_range},
                {"distinct_dist", s.distinct_dist}};
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_record_csv(std::ostream& out, const SearchRecord& r) {
    out << r.p << ',' << r.n << ',' << format_double(r.dist) << ',' << format_double(r.score) << ','
        << (r.is_record ? 1 : 0) << '\n';
}

void write_ladder_csv(std::ostream& out, const EnvelopeAudit& audit) {
    out << kLadderCsvHeader << '\n';
    for (const auto& row : audit.rows) {
        out << format_double(row.N) << ',' << format_double(row.gamma_sum) << ','
            << format_double(row.discrepancy_ratio) << ',' << format_double(row.envelope) << ','
            << format_double(row.envelope_ratio) << '\n';
    }
}

}  // namespace psdist
