// Command-line front end: sumset analysis, classification, scanning,
// verification suites, benchmarks, and set generators for finite abelian
// groups.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumset/conv.hpp"
#include "sumset/errors.hpp"
#include "sumset/group.hpp"
#include "sumset/gset.hpp"
#include "sumset/json_io.hpp"
#include "sumset/rational.hpp"
#include "sumset/search.hpp"
#include "sumset/sets.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"
#include "sumset/verify.hpp"

namespace {

using namespace sumset;

std::string braces(const GSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](Elem e) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(e);
    });
    return out + "}";
}

const char* yesno(bool v) { return v ? "yes" : "no"; }

struct AnalyzeArgs {
    std::string group, a, b;
    std::string tau = "0";
    bool closed = false;
    bool json = false;
};

int run_analyze(const AnalyzeArgs& args) {
    const GroupPtr g = parse_group_spec(args.group);
    const GSet a = parse_set_spec(g, args.a);
    const GSet b = parse_set_spec(g, args.b);
    const Rat tau = parse_rational(args.tau);
    const GSet s = sumset::sumset(a, b);
    const Subgroup h = stabilizer(s);
    const GSet popular = popular_sumset(a, b, tau, args.closed);
    const TamePairReport tame = tame_pair_check(a, b);
    if (args.json) {
        Json j;
        j["group"] = g->to_string();
        j["a"] = gset_json(a);
        j["b"] = gset_json(b);
        j["sumset"] = gset_json(s);
        j["stabilizer"] = subgroup_json(h);
        j["popular_sumset"] = gset_json(popular);
        j["tame"] = tame_report_json(tame);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "group=" << g->to_string() << "\n";
    std::cout << "A=" << braces(a) << " |A|=" << a.size() << "\n";
    std::cout << "B=" << braces(b) << " |B|=" << b.size() << "\n";
    std::cout << "A+B=" << braces(s) << " |A+B|=" << s.size() << "\n";
    std::cout << "stabilizer=" << braces(h.members) << " order=" << h.order()
              << " index=" << h.index << "\n";
    std::cout << "popular(tau=" << format_rational(tau) << ","
              << (args.closed ? "closed" : "open") << ")=" << braces(popular)
              << " size=" << popular.size() << "\n";
    const char* regime = tame.regime == PairRegime::Critical        ? "critical"
                         : tame.regime == PairRegime::Subcritical   ? "subcritical"
                                                                    : "supercritical";
    std::cout << "regime=" << regime << " tame=" << yesno(tame.tame) << "\n";
    if (tame.certificate) {
        const KneserCertificate& c = *tame.certificate;
        std::cout << "certificate: |A+B|=" << c.lhs << " |A+H|+|B+H|-|H|=" << c.rhs
                  << " valid=" << yesno(c.valid) << "\n";
    }
    if (tame.exact_type_i)
        std::cout << "exact-period K=" << braces(tame.exact_type_i->members) << "\n";
    if (tame.exact_type_ii) std::cout << "exact quasi-periodic decomposition found\n";
    if (tame.exact_type_iii)
        std::cout << "exact parallel progression cover found (N="
                  << tame.exact_type_iii->hom.modulus << ")\n";
    if (tame.unclassified_exact) std::cout << "no exact structural match\n";
    return 0;
}

struct ClassifyArgs {
    std::string group, a, b;
    std::string eps = "1/4";
    std::int64_t d = 6;
    std::string delta = "0";
    bool all = false;
    bool json = false;
};

void print_classification_text(const ClassificationResult& res) {
    std::cout << "tag=" << class_tag_name(res.tag) << "\n";
    if (res.tag != ClassTag::Unclassified)
        std::cout << "K=" << braces(res.subgroup.members) << " order=" << res.subgroup.order()
                  << " index=" << res.subgroup.index << "\n";
    if (res.periodicity)
        std::cout << "periodicity: defect=" << format_rational(res.periodicity->defect)
                  << " m(A+B+K)=" << format_rational(res.periodicity->m_sum_plus_k) << "\n";
    if (res.qp_pair)
        std::cout << "qp-pair: m(A0+B0)=" << format_rational(res.qp_pair->m_residual_sum)
                  << " bound=" << format_rational(res.qp_pair->bound) << "\n";
    if (res.cover)
        std::cout << "cover: N=" << res.cover->cover.hom.modulus
                  << " m(A+B)=" << format_rational(res.cover->m_sum)
                  << " cap=" << format_rational(res.cover->m_k_cap) << "\n";
    for (const std::string& line : res.diagnostics) std::cout << "  " << line << "\n";
}

int run_classify(const ClassifyArgs& args) {
    const GroupPtr g = parse_group_spec(args.group);
    const GSet a = parse_set_spec(g, args.a);
    const GSet b = parse_set_spec(g, args.b);
    const Rat eps = parse_rational(args.eps);
    const Rat delta = parse_rational(args.delta);
    if (args.all) {
        const std::vector<ClassificationResult> all =
            classify_pair_all(a, b, eps, args.d, delta);
        if (args.json) {
            Json j = Json::array();
            for (const ClassificationResult& res : all) j.push_back(classification_json(res));
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "witnesses=" << all.size() << "\n";
            for (const ClassificationResult& res : all) print_classification_text(res);
        }
        return 0;
    }
    const ClassificationResult res = classify_pair(a, b, eps, args.d, delta);
    if (args.json)
        std::cout << classification_json(res).dump(2) << "\n";
    else
        print_classification_text(res);
    return 0;
}

struct ScanArgs {
    std::string group;
    std::string eps = "1/4";
    std::int64_t d = 6;
    int threads = 0;
    bool json = false;
};

int run_scan(const ScanArgs& args) {
    const GroupPtr g = parse_group_spec(args.group);
    const Rat eps = parse_rational(args.eps);
    const DeltaScanResult result = delta_scan(g, eps, args.d, args.threads);
    if (args.json) {
        std::cout << delta_scan_json(result).dump(2) << "\n";
        return 0;
    }
    std::cout << scan_csv(result);
    std::cout << "# pairs=" << result.pair_count << "\n";
    std::cout << "# delta_star="
              << (result.delta_star ? format_rational(*result.delta_star) : std::string("none"))
              << "\n";
    std::cout << "# unclassified=" << result.unclassified.size() << "\n";
    for (const std::string& line : result.unclassified) std::cout << "# " << line << "\n";
    return 0;
}

struct VerifyArgs {
    bool kneser = false, saturation = false, tame_structure = false, overflow = false;
    bool subpair_inheritance = false, equal_subpair = false, mover_transfer = false;
    bool qp_builder = false, classification = false, covers = false, oracle = false;
    bool conv = false, lattice = false, determinism = false, all_suites = false;
    std::int64_t max_size = 6;
    std::string eps = "1/4";
    std::int64_t d = 6;
    std::uint64_t seed = 42;
    std::int64_t count = 100;
    int threads = 0;
    std::vector<std::int64_t> primes = {5, 7};
    std::vector<int> thread_counts = {1, 4};
    bool json = false;
};

int run_verify(const VerifyArgs& args_in) {
    VerifyArgs args = args_in;
    if (args.all_suites) {
        args.kneser = args.saturation = args.tame_structure = args.overflow = true;
        args.subpair_inheritance = args.equal_subpair = args.mover_transfer = true;
        args.qp_builder = args.classification = args.covers = args.oracle = true;
        args.conv = args.lattice = args.determinism = true;
    }
    const Rat eps = parse_rational(args.eps);
    std::vector<VerifyReport> reports;
    if (args.kneser) reports.push_back(verify_kneser_exhaustive(args.max_size, args.threads));
    if (args.saturation) reports.push_back(verify_sum_saturation(args.max_size, args.threads));
    if (args.tame_structure)
        reports.push_back(verify_tame_pair_structure(args.max_size, args.threads));
    if (args.overflow) reports.push_back(verify_coset_overflow(args.max_size, args.threads));
    if (args.subpair_inheritance)
        reports.push_back(verify_subpair_inheritance(args.max_size, args.threads));
    if (args.equal_subpair)
        reports.push_back(verify_equal_mass_subpair(args.max_size, args.threads));
    if (args.mover_transfer)
        reports.push_back(verify_mover_transfer(args.max_size, args.threads));
    if (args.qp_builder)
        reports.push_back(verify_qp_builder_exhaustive(args.max_size, args.threads));
    if (args.classification)
        reports.push_back(
            verify_classification_coverage(args.max_size, eps, args.d, args.threads));
    if (args.covers) reports.push_back(verify_ap_cover_bounds(args.primes, eps, args.threads));
    if (args.oracle) reports.push_back(verify_oracle_coverage(args.primes, eps, args.threads));
    if (args.conv)
        reports.push_back(verify_convolution_equivalence(args.count, args.seed, args.threads));
    if (args.lattice) reports.push_back(verify_lattice_bounds(args.count, args.seed, args.threads));
    if (args.determinism) reports.push_back(verify_determinism(args.thread_counts));
    if (reports.empty()) {
        std::cerr << "error: no suite selected (see --help; --all-suites runs everything)\n";
        return 2;
    }
    std::int64_t total_anomalies = 0;
    if (args.json) {
        Json j = Json::array();
        for (const VerifyReport& r : reports) {
            j.push_back(verify_report_json(r));
            total_anomalies += r.anomaly_count;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const VerifyReport& r : reports) {
            std::cout << render_report(r);
            total_anomalies += r.anomaly_count;
        }
        std::cout << "suites=" << reports.size() << " total_anomalies=" << total_anomalies
                  << "\n";
    }
    return total_anomalies == 0 ? 0 : 1;
}

struct BenchArgs {
    std::string group = "256";
    std::int64_t count = 50;
    std::uint64_t seed = 42;
};

int run_bench(const BenchArgs& args) {
    const GroupPtr g = parse_group_spec(args.group);
    const std::uint64_t n = static_cast<std::uint64_t>(g->size());
    std::mt19937_64 rng(args.seed);
    std::vector<std::pair<GSet, GSet>> cases;
    for (std::int64_t i = 0; i < args.count; ++i) {
        GSet a(g), b(g);
        const std::int64_t sa = 1 + static_cast<std::int64_t>(rng() % n);
        const std::int64_t sb = 1 + static_cast<std::int64_t>(rng() % n);
        while (a.size() < sa) a.insert(static_cast<Elem>(rng() % n));
        while (b.size() < sb) b.insert(static_cast<Elem>(rng() % n));
        cases.emplace_back(std::move(a), std::move(b));
    }
    using clock = std::chrono::steady_clock;
    std::int64_t checksum_naive = 0, checksum_dft = 0;
    const auto t0 = clock::now();
    for (const auto& [a, b] : cases)
        checksum_naive += convolution_counts(a, b, ConvBackend::Naive).counts.back();
    const auto t1 = clock::now();
    for (const auto& [a, b] : cases)
        checksum_dft += convolution_counts(a, b, ConvBackend::DFT).counts.back();
    const auto t2 = clock::now();
    if (checksum_naive != checksum_dft) {
        std::cerr << "error: backend checksums differ\n";
        return 1;
    }
    const auto ms = [](auto d) {
        return std::chrono::duration_cast<std::chrono::microseconds>(d).count() / 1000.0;
    };
    // Timing lines are wall-clock measurements and are exempt from the
    // byte-determinism guarantees of every other command.
    std::cout << "group=" << g->to_string() << " pairs=" << args.count << "\n";
    std::cout << "naive_ms=" << ms(t1 - t0) << "\n";
    std::cout << "dft_ms=" << ms(t2 - t1) << "\n";
    return 0;
}

struct GenArgs {
    std::int64_t niveau = 0;
    std::string shift = "0";
    bool qp_pair = false;
    std::string group, k, c, dset;
    Elem c0 = 0, d0 = 0;
    std::string a0, b0;
};

int run_gen(const GenArgs& args) {
    if (args.niveau > 0) {
        const NiveauReport report = niveau_set(args.niveau, parse_rational(args.shift));
        std::cout << niveau_json(report).dump(2) << "\n";
        return 0;
    }
    if (args.qp_pair) {
        const GroupPtr g = parse_group_spec(args.group);
        const Subgroup k = Subgroup::from_members(parse_set_spec(g, args.k));
        const GSet c = parse_set_spec(g, args.c);
        const GSet d = parse_set_spec(g, args.dset);
        const GSet a0 = parse_set_spec(g, args.a0);
        const GSet b0 = parse_set_spec(g, args.b0);
        const auto [a, b] = build_qp_pair(c, d, k, args.c0, args.d0, a0, b0);
        Json j;
        j["a"] = gset_json(a);
        j["b"] = gset_json(b);
        j["size_sum"] = sumset::sumset(a, b).size();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cerr << "error: choose --niveau N or --qp-pair\n";
    return 2;
}

struct OracleArgs {
    std::string group, a, b;
    std::string eps = "1/4";
    std::string delta = "0";
    std::int64_t budget = 100000;
    bool json = false;
};

int run_oracle(const OracleArgs& args) {
    const GroupPtr g = parse_group_spec(args.group);
    const GSet a = parse_set_spec(g, args.a);
    const GSet b = parse_set_spec(g, args.b);
    const std::optional<SemicontinuityWitness> w =
        semicontinuity_oracle(a, b, parse_rational(args.eps), parse_rational(args.delta),
                              args.budget);
    if (!w) {
        std::cout << "no witness found within budget\n";
        return 0;
    }
    if (args.json)
        std::cout << semicontinuity_json(*w).dump(2) << "\n";
    else
        std::cout << "witness S=" << braces(w->s) << " T=" << braces(w->t)
                  << " cost=" << format_rational(w->move_cost)
                  << " subcritical=" << yesno(w->subcritical) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Additive-combinatorics toolkit for finite abelian groups"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Sumset, stabilizer, popular sumset, and exact structure of a pair");
    analyze->add_option("--group", analyze_args.group, "group spec, e.g. 12 or 2x3")->required();
    analyze->add_option("--A", analyze_args.a, "first set")->required();
    analyze->add_option("--B", analyze_args.b, "second set")->required();
    analyze->add_option("--tau", analyze_args.tau, "popularity threshold (rational)");
    analyze->add_flag("--closed", analyze_args.closed, "use counts >= tau*|G| instead of >");
    analyze->add_flag("--json", analyze_args.json, "JSON output");

    ClassifyArgs classify_args;
    CLI::App* classify = app.add_subcommand(
        "classify", "Classify a small-doubling pair into the structure trichotomy");
    classify->add_option("--group", classify_args.group, "group spec")->required();
    classify->add_option("--A", classify_args.a, "first set")->required();
    classify->add_option("--B", classify_args.b, "second set")->required();
    classify->add_option("--eps", classify_args.eps, "epsilon (rational)");
    classify->add_option("--d", classify_args.d, "max subgroup index");
    classify->add_option("--delta", classify_args.delta, "doubling slack (rational)");
    classify->add_flag("--all", classify_args.all, "list every verified witness");
    classify->add_flag("--json", classify_args.json, "JSON output");

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand(
        "scan", "Classify every eligible pair in a group at its own doubling gap");
    scan->add_option("--group", scan_args.group, "group spec")->required();
    scan->add_option("--eps", scan_args.eps, "epsilon (rational)");
    scan->add_option("--d", scan_args.d, "max subgroup index");
    scan->add_option("--threads", scan_args.threads, "worker threads (0 = auto)");
    scan->add_flag("--json", scan_args.json, "JSON output");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run exhaustive verification suites");
    verify->add_flag("--kneser", verify_args.kneser, "Kneser bound, stabilizers, certificates");
    verify->add_flag("--saturation", verify_args.saturation, "coset saturation laws");
    verify->add_flag("--tame-structure", verify_args.tame_structure,
                     "structure of critical pairs");
    verify->add_flag("--overflow", verify_args.overflow, "coset overflow law");
    verify->add_flag("--subpair-inheritance", verify_args.subpair_inheritance,
                     "subpair transfer at equal sumset size");
    verify->add_flag("--equal-subpair", verify_args.equal_subpair,
                     "equal-size subpair replacement");
    verify->add_flag("--mover-transfer", verify_args.mover_transfer,
                     "translate movers under periodic sumsets");
    verify->add_flag("--qp-builder", verify_args.qp_builder, "quasi-periodic pair builder");
    verify->add_flag("--classification", verify_args.classification,
                     "classification coverage at gap <= 1/|G|");
    verify->add_flag("--covers", verify_args.covers, "progression cover bounds in Z/p");
    verify->add_flag("--oracle", verify_args.oracle, "near-pair oracle coverage in Z/p");
    verify->add_flag("--conv", verify_args.conv, "naive vs DFT convolution equivalence");
    verify->add_flag("--lattice", verify_args.lattice, "lattice-interval counting bounds");
    verify->add_flag("--determinism", verify_args.determinism,
                     "byte-identical output across worker counts");
    verify->add_flag("--all-suites", verify_args.all_suites, "run every suite");
    verify->add_option("--max-size", verify_args.max_size, "max group order for exhaustive suites");
    verify->add_option("--eps", verify_args.eps, "epsilon (rational)");
    verify->add_option("--d", verify_args.d, "max subgroup index");
    verify->add_option("--seed", verify_args.seed, "RNG seed for randomized suites");
    verify->add_option("--count", verify_args.count, "instance count for randomized suites");
    verify->add_option("--threads", verify_args.threads, "worker threads (0 = auto)");
    verify->add_option("--primes", verify_args.primes, "primes for the Z/p suites")
        ->delimiter(',');
    verify->add_option("--thread-counts", verify_args.thread_counts,
                       "worker counts compared by --determinism")
        ->delimiter(',');
    verify->add_flag("--json", verify_args.json, "JSON output");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Time naive vs DFT convolution");
    bench->add_option("--group", bench_args.group, "group spec");
    bench->add_option("--count", bench_args.count, "number of random pairs");
    bench->add_option("--seed", bench_args.seed, "RNG seed");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate structured sets");
    gen->add_option("--niveau", gen_args.niveau,
                    "high-weight slice of (Z/2)^N with its hyperplane audit");
    gen->add_option("--shift", gen_args.shift, "weight threshold shift (rational)");
    gen->add_flag("--qp-pair", gen_args.qp_pair, "build a quasi-periodic pair");
    gen->add_option("--group", gen_args.group, "group spec (for --qp-pair)");
    gen->add_option("--k", gen_args.k, "subgroup members (for --qp-pair)");
    gen->add_option("--c", gen_args.c, "K-periodic C (for --qp-pair)");
    gen->add_option("--dset", gen_args.dset, "K-periodic D (for --qp-pair)");
    gen->add_option("--c0", gen_args.c0, "corner coset representative in C");
    gen->add_option("--d0", gen_args.d0, "corner coset representative in D");
    gen->add_option("--a0", gen_args.a0, "residual subset of the C corner");
    gen->add_option("--b0", gen_args.b0, "residual subset of the D corner");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "Find a nearby subcritical pair within a move budget");
    oracle->add_option("--group", oracle_args.group, "group spec")->required();
    oracle->add_option("--A", oracle_args.a, "first set")->required();
    oracle->add_option("--B", oracle_args.b, "second set")->required();
    oracle->add_option("--eps", oracle_args.eps, "max total move cost (rational)");
    oracle->add_option("--delta", oracle_args.delta, "popularity slack (rational)");
    oracle->add_option("--budget", oracle_args.budget, "search-node budget");
    oracle->add_flag("--json", oracle_args.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_args);
        if (classify->parsed()) return run_classify(classify_args);
        if (scan->parsed()) return run_scan(scan_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (oracle->parsed()) return run_oracle(oracle_args);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
