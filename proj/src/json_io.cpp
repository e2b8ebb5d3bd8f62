#include "sumset/json_io.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "sumset/errors.hpp"

namespace sumset {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::int64_t parse_int(const std::string& token, const std::string& what) {
    const std::string t = strip(token);
    if (t.empty()) throw InvalidSpecError(what + ": empty number in \"" + token + "\"");
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(t, &pos);
    } catch (const std::exception&) {
        throw InvalidSpecError(what + ": \"" + t + "\" is not an integer");
    }
    if (pos != t.size()) throw InvalidSpecError(what + ": trailing characters in \"" + t + "\"");
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::vector<std::int64_t> parse_factor_list(const std::string& spec) {
    std::string body = strip(spec);
    if (body.empty()) throw InvalidSpecError("group spec is empty");
    for (char& c : body)
        if (c == 'X' || c == '*' || c == ',') c = 'x';
    std::vector<std::int64_t> factors;
    for (const std::string& token : split(body, 'x')) {
        const std::int64_t f = parse_int(token, "group spec");
        if (f < 1) throw InvalidSpecError("group spec: factor " + std::to_string(f) + " < 1");
        factors.push_back(f);
    }
    return factors;
}

GroupPtr parse_group_spec(const std::string& spec) { return make_group(parse_factor_list(spec)); }

Rat parse_rational(const std::string& spec) {
    const std::string body = strip(spec);
    const std::size_t slash = body.find('/');
    if (slash == std::string::npos) return Rat(parse_int(body, "rational"));
    const std::int64_t num = parse_int(body.substr(0, slash), "rational");
    const std::int64_t den = parse_int(body.substr(slash + 1), "rational");
    if (den == 0) throw InvalidSpecError("rational: zero denominator in \"" + body + "\"");
    return Rat(num, den);
}

GSet parse_set_spec(const GroupPtr& g, const std::string& spec) {
    const std::string body = strip(spec);
    GSet out(g);
    if (body.empty()) return out;
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        // Hex bitmask, least significant digit last; bit i = element i.
        std::int64_t bit = 0;
        for (std::size_t at = body.size(); at > 2; --at) {
            const int digit = hex_digit(body[at - 1]);
            if (digit < 0)
                throw InvalidSpecError(std::string("set spec: bad hex digit '") + body[at - 1] +
                                       "'");
            for (int k = 0; k < 4; ++k, ++bit) {
                if (!(digit >> k & 1)) continue;
                if (bit >= g->size())
                    throw InvalidSpecError("set spec: bit " + std::to_string(bit) +
                                           " outside a group of order " +
                                           std::to_string(g->size()));
                out.insert(bit);
            }
        }
        return out;
    }
    if (body.find('(') != std::string::npos) {
        // Coordinate tuples "(a,b),(c,d)" with one entry per group factor.
        const std::size_t rank = g->factors().size();
        std::size_t at = 0;
        while (at < body.size()) {
            while (at < body.size() &&
                   (body[at] == ',' || std::isspace(static_cast<unsigned char>(body[at]))))
                ++at;
            if (at == body.size()) break;
            if (body[at] != '(')
                throw InvalidSpecError("set spec: expected '(' at position " +
                                       std::to_string(at));
            const std::size_t close = body.find(')', at);
            if (close == std::string::npos)
                throw InvalidSpecError("set spec: unterminated tuple");
            std::vector<std::int64_t> coords;
            for (const std::string& token : split(body.substr(at + 1, close - at - 1), ','))
                coords.push_back(parse_int(token, "set spec"));
            if (coords.size() != rank)
                throw InvalidSpecError("set spec: tuple has " + std::to_string(coords.size()) +
                                       " coordinates, group has " + std::to_string(rank) +
                                       " factors");
            for (std::size_t i = 0; i < rank; ++i) {
                const std::int64_t f = g->factors()[i];
                if (coords[i] < 0 || coords[i] >= f)
                    throw InvalidSpecError("set spec: coordinate " + std::to_string(coords[i]) +
                                           " outside [0, " + std::to_string(f) + ")");
            }
            out.insert(g->compose(coords));
            at = close + 1;
        }
        return out;
    }
    for (const std::string& token : split(body, ',')) {
        const std::int64_t e = parse_int(token, "set spec");
        if (e < 0 || e >= g->size())
            throw InvalidSpecError("set spec: element " + std::to_string(e) +
                                   " outside a group of order " + std::to_string(g->size()));
        out.insert(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON views
// ---------------------------------------------------------------------------

Json rational_json(const Rat& r) {
    return Json{{"num", r.numerator()}, {"den", r.denominator()}};
}

Json gset_json(const GSet& s) {
    Json j;
    j["group"] = s.group()->to_string();
    j["elements"] = s.elements();
    j["size"] = s.size();
    return j;
}

Json subgroup_json(const Subgroup& k) {
    Json j;
    j["members"] = k.members.elements();
    j["order"] = k.order();
    j["index"] = k.index;
    return j;
}

Json certificate_json(const KneserCertificate& cert) {
    Json j;
    j["a"] = gset_json(cert.a);
    j["b"] = gset_json(cert.b);
    j["stabilizer"] = subgroup_json(cert.stab);
    j["lhs"] = cert.lhs;
    j["rhs"] = cert.rhs;
    j["valid"] = cert.valid;
    return j;
}

Json hom_json(const SubgroupHom& hom) {
    Json j;
    j["domain"] = subgroup_json(hom.domain);
    j["modulus"] = hom.modulus;
    j["kernel"] = subgroup_json(hom.kernel_subgroup);
    j["surjective"] = hom.surjective;
    if (!hom.multipliers.empty()) j["multipliers"] = hom.multipliers;
    return j;
}

Json progression_json(const CyclicProgression& prog) {
    return Json{{"start", prog.start}, {"length", prog.length}};
}

Json cover_json(const ProgressionCover& cover) {
    Json j;
    j["hom"] = hom_json(cover.hom);
    j["prog_a"] = progression_json(cover.prog_a);
    j["prog_b"] = progression_json(cover.prog_b);
    j["shift_a"] = cover.shift_a;
    j["shift_b"] = cover.shift_b;
    j["cover_size_a"] = cover.cover_size_a();
    j["cover_size_b"] = cover.cover_size_b();
    return j;
}

Json qp_decomposition_json(const QPDecomposition& dec) {
    Json j;
    j["subgroup"] = subgroup_json(dec.subgroup);
    j["periodic_part"] = gset_json(dec.periodic_part);
    j["residual_part"] = gset_json(dec.residual_part);
    j["residual_coset"] = dec.residual_coset;
    j["epsilon_defect"] = rational_json(dec.epsilon_defect);
    return j;
}

Json classification_json(const ClassificationResult& result) {
    Json j;
    j["tag"] = class_tag_name(result.tag);
    j["subgroup"] = subgroup_json(result.subgroup);
    j["epsilon"] = rational_json(result.epsilon);
    j["delta"] = rational_json(result.delta_used);
    j["d"] = result.d;
    if (result.periodicity) {
        const PeriodicityWitness& w = *result.periodicity;
        j["periodicity"] = Json{{"defect", rational_json(w.defect)},
                                {"m_sum_plus_k", rational_json(w.m_sum_plus_k)},
                                {"m_a_plus_k", rational_json(w.m_a_plus_k)},
                                {"m_b_plus_k", rational_json(w.m_b_plus_k)}};
    }
    if (result.qp_pair) {
        const QPPairWitness& w = *result.qp_pair;
        j["qp_pair"] = Json{{"dec_a", qp_decomposition_json(w.dec_a)},
                            {"dec_b", qp_decomposition_json(w.dec_b)},
                            {"m_residual_sum", rational_json(w.m_residual_sum)},
                            {"bound", rational_json(w.bound)}};
    }
    if (result.cover) {
        const CoverWitness& w = *result.cover;
        j["cover"] = Json{{"cover", cover_json(w.cover)},
                          {"m_sum", rational_json(w.m_sum)},
                          {"m_k_cap", rational_json(w.m_k_cap)}};
    }
    if (!result.diagnostics.empty()) j["diagnostics"] = result.diagnostics;
    j["bohr_interval_route_vacuous"] = result.bohr_interval_route_vacuous;
    return j;
}

Json tame_report_json(const TamePairReport& report) {
    Json j;
    switch (report.regime) {
    case PairRegime::Critical: j["regime"] = "critical"; break;
    case PairRegime::Subcritical: j["regime"] = "subcritical"; break;
    case PairRegime::Supercritical: j["regime"] = "supercritical"; break;
    }
    if (report.certificate) j["certificate"] = certificate_json(*report.certificate);
    j["tame"] = report.tame;
    if (report.exact_type_i) j["exact_type_i"] = subgroup_json(*report.exact_type_i);
    if (report.exact_type_ii)
        j["exact_type_ii"] = Json{{"dec_a", qp_decomposition_json(report.exact_type_ii->first)},
                                  {"dec_b", qp_decomposition_json(report.exact_type_ii->second)}};
    if (report.exact_type_iii) j["exact_type_iii"] = cover_json(*report.exact_type_iii);
    j["unclassified_exact"] = report.unclassified_exact;
    return j;
}

Json scan_row_json(const ScanRow& row) {
    Json j;
    j["group"] = row.group;
    j["size_a"] = row.size_a;
    j["size_b"] = row.size_b;
    j["size_sum"] = row.size_sum;
    j["size_popular"] = row.size_popular;
    j["tag"] = class_tag_name(row.tag);
    j["k_index"] = row.k_index;
    j["gap"] = rational_json(row.gap);
    return j;
}

Json delta_scan_json(const DeltaScanResult& result) {
    Json j;
    Json rows = Json::array();
    for (const ScanRow& row : result.rows) rows.push_back(scan_row_json(row));
    j["rows"] = std::move(rows);
    j["pair_count"] = result.pair_count;
    if (result.delta_star)
        j["delta_star"] = rational_json(*result.delta_star);
    else
        j["delta_star"] = nullptr;
    j["unclassified"] = result.unclassified;
    return j;
}

Json verify_report_json(const VerifyReport& report) {
    Json j;
    j["suite"] = report.suite;
    j["candidates_scanned"] = report.candidates_scanned;
    j["instances_checked"] = report.instances_checked;
    j["anomaly_count"] = report.anomaly_count;
    j["passed"] = report.passed();
    Json anomalies = Json::array();
    for (const Anomaly& an : report.anomalies)
        anomalies.push_back(Json{{"suite", an.suite},
                                 {"reproducer", an.reproducer},
                                 {"detail", an.detail}});
    j["anomalies"] = std::move(anomalies);
    j["notes"] = report.notes;
    return j;
}

Json niveau_json(const NiveauReport& report) {
    Json j;
    j["set"] = gset_json(report.set);
    j["min_weight"] = report.min_weight;
    j["difference_size"] = report.difference_size;
    j["hyperplanes_checked"] = report.hyperplanes_checked;
    j["hyperplanes_good"] = report.hyperplanes_good;
    j["good_direction_count"] = report.good_directions.size();
    j["exceptional"] = report.exceptional;
    return j;
}

Json semicontinuity_json(const SemicontinuityWitness& witness) {
    Json j;
    j["s"] = gset_json(witness.s);
    j["t"] = gset_json(witness.t);
    j["move_cost"] = rational_json(witness.move_cost);
    j["subcritical"] = witness.subcritical;
    return j;
}

Json convolution_json(const ConvolutionTable& table) {
    Json j;
    j["counts"] = table.counts;
    j["backend"] = table.backend_used == ConvBackend::Naive ? "naive" : "dft";
    return j;
}

} // namespace sumset
