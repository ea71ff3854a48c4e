// Command-line front end: exact searches, algebraic constructions, and
// nonexistence certificates for modular Golomb rulers and related designs.
//
// Exit codes: 0 affirmative, 1 negative, 2 usage error, 3 inconclusive,
// 4 node budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "golomb/cache.hpp"
#include "golomb/constructions.hpp"
#include "golomb/io.hpp"
#include "golomb/version.hpp"

namespace {

using namespace golomb;

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitBudget = 4;

struct GlobalOpts {
    std::string format = "json";
    int threads = 0; // 0: take GOLOMB_THREADS, default 1
    std::optional<u64> budget;
    std::string cache_path;
};

int resolve_threads(const GlobalOpts& g) {
    if (g.threads > 0) return g.threads;
    if (const char* env = std::getenv("GOLOMB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void emit(const GlobalOpts& g, const json& doc, const std::string& text_line) {
    if (g.format == "text") std::cout << text_line << '\n';
    else std::cout << doc.dump(2) << '\n';
}

int exit_for_status(SearchStatus st, bool affirmative_on_found) {
    switch (st) {
        case SearchStatus::Found: return affirmative_on_found ? kExitAffirmative : kExitNegative;
        case SearchStatus::Exhausted: return affirmative_on_found ? kExitNegative : kExitAffirmative;
        default: return kExitBudget;
    }
}

int exit_for_certificate(const Certificate& c) {
    return c.nonexistent() ? kExitAffirmative : kExitInconclusive;
}

std::optional<std::pair<i64, i64>> parse_k_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            i64 k = std::stoll(s);
            return std::make_pair(k, k);
        }
        i64 a = std::stoll(s.substr(0, dots));
        i64 b = std::stoll(s.substr(dots + 2));
        if (a > b) return std::nullopt;
        return std::make_pair(a, b);
    } catch (...) {
        return std::nullopt;
    }
}

int run_search(const GlobalOpts& g, i64 v, i64 k, const std::string& mode_name) {
    SearchOptions opt;
    if (mode_name == "first") opt.mode = SearchMode::First;
    else if (mode_name == "all") opt.mode = SearchMode::All;
    else if (mode_name == "prove") opt.mode = SearchMode::Prove;
    else {
        std::cerr << "search: mode must be first, all, or prove\n";
        return kExitUsage;
    }
    opt.budget = g.budget;
    opt.threads = resolve_threads(g);

    CacheKey key{v, k, mode_name};
    if (!g.cache_path.empty()) {
        if (auto hit = cache_get(g.cache_path, key, GOLOMB_VERSION)) {
            json doc = hit->summary;
            doc["cached"] = true;
            SearchOutcome o = outcome_from_json(hit->summary);
            emit(g, doc, std::string("cached: ") + status_name(o.status));
            return exit_for_status(o.status, opt.mode != SearchMode::Prove);
        }
    }

    SearchOutcome o = search(v, k, opt);
    json doc = outcome_to_json(o);
    if (!g.cache_path.empty() && o.status != SearchStatus::BudgetExceeded) {
        cache_put(g.cache_path, CacheRecord{key, GOLOMB_VERSION, "", doc});
    }
    std::string line = std::string(status_name(o.status));
    if (o.witness) line += "  " + marks_to_string(o.witness->marks);
    if (o.num_canonical) line += "  canonical=" + std::to_string(*o.num_canonical);
    emit(g, doc, line);
    return exit_for_status(o.status, opt.mode != SearchMode::Prove);
}

int run_spectrum(const GlobalOpts& g, i64 k) {
    Spectrum sp = spectrum(k, g.budget, resolve_threads(g));
    if (g.format == "csv") {
        std::cout << spectrum_to_csv(sp);
    } else {
        std::string line = "MGR(" + std::to_string(k) + "): sporadic {";
        for (std::size_t i = 0; i < sp.sporadic.size(); ++i) {
            if (i) line += ",";
            line += std::to_string(sp.sporadic[i]);
        }
        line += "}, all v >= " + std::to_string(sp.tail_start);
        if (!sp.complete) line += " (incomplete: budget exhausted)";
        emit(g, spectrum_to_json(sp), line);
    }
    return sp.complete ? kExitAffirmative : kExitBudget;
}

int run_min_length(const GlobalOpts& g, i64 v, i64 k) {
    auto len = min_length(v, k, resolve_threads(g), g.budget);
    json doc;
    doc["v"] = v;
    doc["k"] = k;
    doc["min_length"] = len ? json(*len) : json(nullptr);
    emit(g, doc, len ? "min length " + std::to_string(*len) : "no ruler exists");
    return len ? kExitAffirmative : kExitNegative;
}

int run_construct(const GlobalOpts& g, const std::string& method, i64 q, i64 p, i64 k, i64 v) {
    Ruler r;
    if (method == "singer") r = singer(q);
    else if (method == "bose") r = bose(q);
    else if (method == "ruzsa") r = ruzsa(p);
    else if (method == "exist-small") r = exist_small(k);
    else if (method == "exist-any") r = exist_any(k, v);
    else {
        std::cerr << "construct: unknown method " << method << '\n';
        return kExitUsage;
    }
    emit(g, ruler_to_json(r),
         "(" + std::to_string(r.modulus) + "," + std::to_string(r.order()) + ")-MGR  " +
             marks_to_string(r.marks));
    return kExitAffirmative;
}

int run_certify_mgr(const GlobalOpts& g, i64 v, i64 k, bool with_trace) {
    Certificate c = certify_mgr(v, k);
    json doc = certificate_to_json(c);
    if (!with_trace) doc.erase("trace");
    emit(g, doc, (c.nonexistent() ? "nonexistent via " : "inconclusive via ") + c.rule);
    return exit_for_certificate(c);
}

int run_ooc_verify(const GlobalOpts& g, const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "ooc verify: cannot open " << file << '\n';
        return kExitUsage;
    }
    OocCode code = ooc_from_json(json::parse(in));
    OocReport rep = verify_ooc(code);
    emit(g, ooc_report_to_json(rep),
         rep.valid ? (rep.optimal ? "valid (optimal)" : "valid") : "invalid");
    return rep.valid ? kExitAffirmative : kExitNegative;
}

int run_ooc_certify(const GlobalOpts& g, i64 v, i64 k) {
    Certificate c = certify_optimal_ooc(v, k);
    emit(g, certificate_to_json(c),
         c.nonexistent() ? "no optimal code exists" : "inconclusive");
    return exit_for_certificate(c);
}

int run_steiner(const GlobalOpts& g, i64 k, i64 n) {
    Certificate c = steiner_check(k, n);
    emit(g, certificate_to_json(c),
         c.nonexistent() ? "no cyclic Steiner system exists" : "inconclusive");
    return exit_for_certificate(c);
}

int run_rdf(const GlobalOpts& g, i64 v, i64 w, i64 k, i64 lambda) {
    Certificate c = rdf_check(v, w, k, lambda);
    emit(g, certificate_to_json(c),
         c.nonexistent() ? "no relative difference family exists" : "inconclusive");
    return exit_for_certificate(c);
}

int run_table(const GlobalOpts& g, const std::string& range) {
    auto kr = parse_k_range(range);
    if (!kr) {
        std::cerr << "table reproduce: --k expects K or K1..K2\n";
        return kExitUsage;
    }
    bool header = true;
    for (i64 k = kr->first; k <= kr->second; ++k) {
        Spectrum sp = spectrum(k, g.budget, resolve_threads(g));
        std::cout << spectrum_to_csv(sp, header);
        header = false;
        if (!sp.complete) return kExitBudget;
    }
    return kExitAffirmative;
}

json witness_json(const std::optional<SquaresWitness>& w) {
    return w ? json(w->parts) : json(nullptr);
}

int run_nt(const GlobalOpts& g, const std::string& predicate, const std::vector<i64>& args,
           const std::string& method, i64 target, i64 parts, i64 bound,
           const std::string& parity) {
    json doc;
    doc["predicate"] = predicate;
    auto need_args = [&](std::size_t n) {
        if (args.size() != n) throw std::invalid_argument("wrong number of arguments");
    };
    if (predicate == "two-squares") {
        need_args(1);
        bool r = is_sum_two_squares(args[0]);
        doc["n"] = args[0];
        doc["result"] = r;
        doc["witness"] = witness_json(two_squares_witness(args[0]));
        emit(g, doc, r ? "yes" : "no");
        return r ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "three-squares") {
        need_args(1);
        bool r = is_sum_three_squares(args[0]);
        doc["n"] = args[0];
        doc["result"] = r;
        emit(g, doc, r ? "yes" : "no");
        return r ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "perfect-square") {
        need_args(1);
        bool r = is_perfect_square(args[0]);
        doc["n"] = args[0];
        doc["result"] = r;
        emit(g, doc, r ? "yes" : "no");
        return r ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "factor") {
        need_args(1);
        json f = json::array();
        for (auto [p, e] : factorize(args[0])) f.push_back({{"prime", p}, {"exponent", e}});
        doc["n"] = args[0];
        doc["factorization"] = f;
        emit(g, doc, doc["factorization"].dump());
        return kExitAffirmative;
    }
    if (predicate == "is-prime") {
        need_args(1);
        bool r = is_prime(args[0]);
        doc["n"] = args[0];
        doc["result"] = r;
        emit(g, doc, r ? "prime" : "composite");
        return r ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "next-prime") {
        need_args(1);
        doc["n"] = args[0];
        doc["next_prime"] = next_prime(args[0]);
        emit(g, doc, std::to_string(next_prime(args[0])));
        return kExitAffirmative;
    }
    if (predicate == "crt") {
        if (args.size() < 4 || args.size() % 2 != 0)
            throw std::invalid_argument("crt expects residue modulus pairs");
        std::vector<std::pair<i64, i64>> sys;
        for (std::size_t i = 0; i < args.size(); i += 2) sys.emplace_back(args[i], args[i + 1]);
        i64 x = crt(sys);
        doc["solution"] = x;
        emit(g, doc, std::to_string(x));
        return kExitAffirmative;
    }
    if (predicate == "sum-n-squares") {
        std::optional<Parity> par;
        if (parity == "even") par = Parity::Even;
        else if (parity == "odd") par = Parity::Odd;
        else if (!parity.empty()) throw std::invalid_argument("parity must be even or odd");
        auto w = sum_n_squares_bounded(target, static_cast<int>(parts), bound, par);
        doc["target"] = target;
        doc["n"] = parts;
        doc["bound"] = bound;
        doc["witness"] = witness_json(w);
        emit(g, doc, w ? "representable" : "no representation");
        return w ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "consec-non-two-squares") {
        need_args(1);
        ConsecMethod m = ConsecMethod::Auto;
        if (method == "scan") m = ConsecMethod::Scan;
        else if (method == "crt") m = ConsecMethod::Crt;
        else if (!method.empty() && method != "auto")
            throw std::invalid_argument("method must be scan, crt, or auto");
        i64 s = consecutive_non_two_squares(static_cast<int>(args[0]), m);
        doc["t"] = args[0];
        doc["s"] = s;
        emit(g, doc, std::to_string(s));
        return kExitAffirmative;
    }
    if (predicate == "consec-non-three-squares") {
        need_args(1);
        bool r = consecutive_non_three_squares(args[0]);
        doc["n"] = args[0];
        doc["result"] = r;
        emit(g, doc, r ? "yes" : "no");
        return r ? kExitAffirmative : kExitNegative;
    }
    if (predicate == "ternary") {
        need_args(2);
        auto sol = ternary_form_solvable(args[0], args[1]);
        doc["a"] = args[0];
        doc["b"] = args[1];
        doc["solution"] = sol ? json({(*sol)[0], (*sol)[1], (*sol)[2]}) : json(nullptr);
        emit(g, doc, sol ? "solvable" : "no nontrivial solution");
        return sol ? kExitAffirmative : kExitNegative;
    }
    std::cerr << "nt: unknown predicate " << predicate << '\n';
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular Golomb rulers, optical orthogonal codes, and their certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json, text, or csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--threads", g.threads, "worker threads (default: $GOLOMB_THREADS or 1)");
    u64 budget_raw = 0;
    auto* budget_opt = app.add_option("--budget", budget_raw, "node budget for searches");
    app.add_option("--cache", g.cache_path, "path to the append-only result cache");

    // search
    i64 s_v = 0, s_k = 0;
    std::string s_mode = "first";
    auto* cmd_search = app.add_subcommand("search", "backtracking search for a (v,k)-MGR");
    cmd_search->add_option("--v", s_v, "modulus")->required();
    cmd_search->add_option("--k", s_k, "order")->required();
    cmd_search->add_option("--mode", s_mode, "first, all, or prove");

    // spectrum
    i64 sp_k = 0;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "determine MGR(k)");
    cmd_spectrum->add_option("--k", sp_k, "order")->required();

    // min-length
    i64 ml_v = 0, ml_k = 0;
    auto* cmd_minlen = app.add_subcommand("min-length", "minimal length of a (v,k)-MGR");
    cmd_minlen->add_option("--v", ml_v, "modulus")->required();
    cmd_minlen->add_option("--k", ml_k, "order")->required();

    // construct
    std::string c_method;
    i64 c_q = 0, c_p = 0, c_k = 0, c_v = 0;
    auto* cmd_construct = app.add_subcommand("construct", "algebraic ruler constructions");
    cmd_construct->add_option("--method", c_method, "singer, bose, ruzsa, exist-small, exist-any")
        ->required();
    cmd_construct->add_option("--q", c_q, "prime power (singer, bose)");
    cmd_construct->add_option("--p", c_p, "prime (ruzsa)");
    cmd_construct->add_option("--k", c_k, "order (exist-small, exist-any)");
    cmd_construct->add_option("--v", c_v, "modulus (exist-any)");

    // certify mgr
    i64 cm_v = 0, cm_k = 0;
    bool cm_trace = false;
    auto* cmd_certify = app.add_subcommand("certify", "nonexistence certificates");
    auto* cmd_certify_mgr = cmd_certify->add_subcommand("mgr", "certify a (v,k)-MGR nonexistent");
    cmd_certify_mgr->add_option("--v", cm_v, "modulus")->required();
    cmd_certify_mgr->add_option("--k", cm_k, "order")->required();
    cmd_certify_mgr->add_flag("--trace", cm_trace, "include the full trace");

    // ooc verify | certify
    auto* cmd_ooc = app.add_subcommand("ooc", "optical orthogonal codes");
    std::string ooc_file;
    auto* cmd_ooc_verify = cmd_ooc->add_subcommand("verify", "verify correlation properties");
    cmd_ooc_verify->add_option("--file", ooc_file, "code record (JSON)")->required();
    i64 oc_v = 0, oc_k = 0;
    auto* cmd_ooc_certify =
        cmd_ooc->add_subcommand("certify", "certify that no optimal (v,k,1)-OOC exists");
    cmd_ooc_certify->add_option("--v", oc_v, "length (even)")->required();
    cmd_ooc_certify->add_option("--k", oc_k, "weight")->required();

    // steiner check
    i64 st_k = 0, st_n = 0;
    auto* cmd_steiner = app.add_subcommand("steiner", "cyclic Steiner 2-designs");
    auto* cmd_steiner_check = cmd_steiner->add_subcommand("check", "necessary condition");
    cmd_steiner_check->add_option("--k", st_k, "block size (even)")->required();
    cmd_steiner_check->add_option("--n", st_n, "base-block count")->required();

    // rdf check
    i64 rdf_v = 0, rdf_w = 0, rdf_k = 0, rdf_lambda = 1;
    auto* cmd_rdf = app.add_subcommand("rdf", "relative difference families");
    auto* cmd_rdf_check = cmd_rdf->add_subcommand("check", "necessary condition");
    cmd_rdf_check->add_option("--v", rdf_v, "group order (even)")->required();
    cmd_rdf_check->add_option("--w", rdf_w, "subgroup order")->required();
    cmd_rdf_check->add_option("--k", rdf_k, "block size")->required();
    cmd_rdf_check->add_option("--lambda", rdf_lambda, "index");

    // nt
    std::string nt_predicate, nt_method, nt_parity;
    std::vector<i64> nt_args;
    i64 nt_target = 0, nt_n = 0, nt_bound = 0;
    auto* cmd_nt = app.add_subcommand("nt", "number-theoretic predicates");
    cmd_nt->add_option("predicate", nt_predicate, "predicate name")->required();
    cmd_nt->add_option("args", nt_args, "integer arguments");
    cmd_nt->add_option("--method", nt_method, "scan, crt, or auto (consec-non-two-squares)");
    cmd_nt->add_option("--target", nt_target, "target (sum-n-squares)");
    cmd_nt->add_option("--n", nt_n, "number of parts (sum-n-squares)");
    cmd_nt->add_option("--bound", nt_bound, "part bound (sum-n-squares)");
    cmd_nt->add_option("--parity", nt_parity, "part parity (sum-n-squares)");

    // table reproduce
    std::string table_range;
    auto* cmd_table = app.add_subcommand("table", "ruler tables");
    auto* cmd_table_repro = cmd_table->add_subcommand("reproduce", "CSV spectrum table");
    cmd_table_repro->add_option("--k", table_range, "order or range K1..K2")->required();

    // global options may appear after the subcommand name
    auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            self(sub, self);
        }
    };
    enable_fallthrough(&app, enable_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    if (budget_opt->count() > 0) g.budget = budget_raw;

    try {
        if (cmd_search->parsed()) return run_search(g, s_v, s_k, s_mode);
        if (cmd_spectrum->parsed()) return run_spectrum(g, sp_k);
        if (cmd_minlen->parsed()) return run_min_length(g, ml_v, ml_k);
        if (cmd_construct->parsed()) return run_construct(g, c_method, c_q, c_p, c_k, c_v);
        if (cmd_certify->parsed() && cmd_certify_mgr->parsed())
            return run_certify_mgr(g, cm_v, cm_k, cm_trace);
        if (cmd_ooc->parsed() && cmd_ooc_verify->parsed()) return run_ooc_verify(g, ooc_file);
        if (cmd_ooc->parsed() && cmd_ooc_certify->parsed()) return run_ooc_certify(g, oc_v, oc_k);
        if (cmd_steiner->parsed() && cmd_steiner_check->parsed()) return run_steiner(g, st_k, st_n);
        if (cmd_rdf->parsed() && cmd_rdf_check->parsed())
            return run_rdf(g, rdf_v, rdf_w, rdf_k, rdf_lambda);
        if (cmd_nt->parsed())
            return run_nt(g, nt_predicate, nt_args, nt_method, nt_target, nt_n, nt_bound,
                          nt_parity);
        if (cmd_table->parsed() && cmd_table_repro->parsed()) return run_table(g, table_range);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const json::parse_error& e) {
        // the message carries the byte position of the syntax error
        std::cerr << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
