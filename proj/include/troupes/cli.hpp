#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "troupes/json_io.hpp"
#include "troupes/sortstat.hpp"
#include "troupes/verify.hpp"

namespace troupes::cli {

/// Engine caps and output options. Defaults are desk-scale; raise them from
/// a config file (TROUPES_CONFIG or --config) for larger runs.
struct Config {
    int partition_n = kPartitionAllCap;
    int noncrossing_n = kPartitionNoncrossingCap;
    int vhc_n = kVhcCap;
    int brute_perm_n = kBrutePermCap;
    int troupe_n = kTroupeCap;
    int transform_n = kTransformCap;
    int series_order = 64;
    int two_stack_n = kTwoStackCap;
    int three_stack_n = kThreeStackCap;
    std::string format = "text";  // text | json | csv
    unsigned decimal_digits = 0;  // 0: exact output only
    unsigned long long seed = 20260809;

    void apply_json(const Json& j) {
        if (j.contains("caps")) {
            const Json& c = j.at("caps");
            auto get = [&](const char* k, int& slot) {
                if (c.contains(k)) slot = c.at(k).get<int>();
            };
            get("partition_n", partition_n);
            get("noncrossing_n", noncrossing_n);
            get("vhc_n", vhc_n);
            get("brute_perm_n", brute_perm_n);
            get("troupe_n", troupe_n);
            get("transform_n", transform_n);
            get("series_order", series_order);
            get("two_stack_n", two_stack_n);
            get("three_stack_n", three_stack_n);
        }
        if (j.contains("format")) format = j.at("format").get<std::string>();
        if (j.contains("seed")) seed = j.at("seed").get<unsigned long long>();
        if (j.contains("decimal")) decimal_digits = j.at("decimal").get<unsigned>();
    }

    static Config load(const std::string& path) {
        Config c;
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file: " + path);
        Json j;
        in >> j;
        c.apply_json(j);
        return c;
    }
};

namespace detail {

inline void emit(std::ostream& out, const Config& cfg, const Json& doc,
                 const std::string& text_form, const std::string& csv_form = "") {
    if (cfg.format == "json") {
        Json wrapped = doc;
        wrapped["schema"] = kSchemaVersion;
        out << wrapped.dump(2) << "\n";
    } else if (cfg.format == "csv" && !csv_form.empty()) {
        out << csv_form;
    } else {
        out << text_form;
    }
}

inline std::vector<TreeStatistic> parse_stats(const std::string& list) {
    std::vector<TreeStatistic> out;
    if (list.empty()) return out;
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(TreeStatistic::parse(tok));
    return out;
}

inline std::vector<long> parse_long_list(const std::string& list) {
    std::vector<long> out;
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(std::stol(tok));
    return out;
}

inline TroupeSpec parse_troupe(const std::string& name, const std::vector<std::string>& gens) {
    if (!gens.empty()) {
        std::vector<Tree> trees;
        for (const std::string& g : gens) trees.push_back(parse_tree(g));
        return TroupeSpec::generated(trees);
    }
    return TroupeSpec::parse(name);
}

}  // namespace detail

/// Build and run the command-line interface; returns the process exit code.
/// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
/// limit exceeded.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    Config cfg;
    if (const char* env = std::getenv("TROUPES_CONFIG")) {
        try {
            cfg = Config::load(env);
        } catch (const std::exception& e) {
            err << Json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
            return 2;
        }
    }

    CLI::App app{"exact combinatorics of the stack-sorting map: trees, hook configurations, "
                 "and cumulant conversions"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, format;
    unsigned decimal_digits = 0;
    app.add_option("--config", config_path, "JSON config file (overrides TROUPES_CONFIG)");
    app.add_option("--format", format, "output format: text, json, or csv");
    app.add_option("--decimal", decimal_digits,
                   "also render rationals as decimals with this many digits");
    app.add_option("--seed", cfg.seed, "seed for randomized property suites");
    app.add_option("--cap-vhc", cfg.vhc_n, "max base-permutation length for hook enumeration");
    app.add_option("--cap-partition", cfg.partition_n, "max n for full partition enumeration");
    app.add_option("--cap-noncrossing", cfg.noncrossing_n,
                   "max n for noncrossing partition enumeration");
    app.add_option("--cap-brute", cfg.brute_perm_n, "max length for brute-force preimages");
    app.add_option("--cap-troupe", cfg.troupe_n, "max vertex count for tree enumeration");
    app.add_option("--cap-transform", cfg.transform_n, "max size for the troupe transform");
    app.add_option("--cap-series", cfg.series_order, "max truncation order for series work");

    // ---- sort ----
    auto* sort_cmd = app.add_subcommand("sort", "apply the stack-sorting map");
    std::string sort_perm, sort_engine = "stack";
    sort_cmd->add_option("perm", sort_perm, "comma-separated permutation")->required();
    sort_cmd->add_option("--engine", sort_engine, "stack or recursive");

    // ---- fertility ----
    auto* fert_cmd = app.add_subcommand("fertility", "number of stack-sorting preimages");
    std::string fert_perm, fert_method = "vhc";
    bool fert_report = false;
    fert_cmd->add_option("perm", fert_perm)->required();
    fert_cmd->add_option("--method", fert_method, "vhc or brute");
    fert_cmd->add_flag("--report", fert_report,
                       "emit per-troupe and per-class preimage counts as well");

    // ---- preimages ----
    auto* pre_cmd = app.add_subcommand("preimages", "list all stack-sorting preimages");
    std::string pre_perm;
    pre_cmd->add_option("perm", pre_perm)->required();

    // ---- vhc ----
    auto* vhc_cmd = app.add_subcommand("vhc", "valid hook configurations");
    vhc_cmd->require_subcommand(1);
    auto* vhc_enum = vhc_cmd->add_subcommand("enumerate", "all configurations of a permutation");
    std::string vhc_perm;
    vhc_enum->add_option("perm", vhc_perm)->required();
    auto* vhc_count = vhc_cmd->add_subcommand("count", "count configurations");
    std::string vhc_count_perm;
    int vhc_upto = 0;
    bool vhc_avoid = false;
    vhc_count->add_option("perm", vhc_count_perm, "count for one permutation");
    vhc_count->add_option("--upto", vhc_upto, "counts over S_{n-1} for n = 1..N");
    vhc_count->add_flag("--avoid231", vhc_avoid, "restrict bases to 231-avoiders");
    auto* vhc_phi = vhc_cmd->add_subcommand("phi", "connected partition and acyclic orientation");
    std::string vhc_phi_cfg;
    vhc_phi->add_option("config", vhc_phi_cfg, "configuration literal")->required();
    auto* vhc_psi = vhc_cmd->add_subcommand("psi", "noncrossing partition and permutation pair");
    std::string vhc_psi_cfg, psi_eta, psi_sigma;
    vhc_psi->add_option("config", vhc_psi_cfg, "configuration literal");
    vhc_psi->add_option("--eta", psi_eta, "noncrossing partition (inverse direction)");
    vhc_psi->add_option("--sigma", psi_sigma, "permutation in L(K(eta)) (inverse direction)");

    // ---- tree ----
    auto* tree_cmd = app.add_subcommand("tree", "colored binary plane trees and troupes");
    tree_cmd->require_subcommand(1);
    auto* tree_ins = tree_cmd->add_subcommand("insert", "insertion of one tree into another");
    std::string ins_t1, ins_t2, ins_at;
    tree_ins->add_option("--t1", ins_t1)->required();
    tree_ins->add_option("--at", ins_at, "L/R path to the insertion vertex (empty = root)");
    tree_ins->add_option("--t2", ins_t2)->required();
    auto* tree_dec = tree_cmd->add_subcommand("decompose", "decomposition at a black 2-child vertex");
    std::string dec_tree, dec_at;
    tree_dec->add_option("tree", dec_tree)->required();
    tree_dec->add_option("--at", dec_at, "L/R path");
    auto* tree_trav = tree_cmd->add_subcommand("traverse", "in-order/postorder reading");
    std::string trav_tree, trav_order = "inorder";
    tree_trav->add_option("tree", trav_tree, "decreasing tree literal")->required();
    tree_trav->add_option("--order", trav_order, "inorder or postorder");
    auto* tree_enum = tree_cmd->add_subcommand("enumerate", "trees of a troupe by size");
    std::string te_troupe = "BPT", te_stats;
    std::vector<std::string> te_gens;
    int te_n = 0;
    bool te_decreasing = false, te_count = false;
    tree_enum->add_option("--troupe", te_troupe, "BPT, FBPT, MOT, or SCH");
    tree_enum->add_option("--generator", te_gens, "branch generators (repeatable)");
    tree_enum->add_option("--n", te_n, "vertex count")->required();
    tree_enum->add_flag("--decreasing", te_decreasing, "standardized decreasing trees");
    tree_enum->add_flag("--count", te_count, "print only the count");
    tree_enum->add_option("--stats", te_stats,
                          "emit the generating polynomial for these statistics "
                          "(comma list: des+1, peak+1, black+1, size+1, count:<color>)");
    auto* tree_tr = tree_cmd->add_subcommand("transform", "troupe transform of a counting sequence");
    std::string tr_omega, tr_style = "synthetic";
    int tr_n = 0;
    tree_tr->add_option("--omega", tr_omega, "generator counts, comma list")->required();
    tree_tr->add_option("--n", tr_n, "max size")->required();
    tree_tr->add_option("--style", tr_style, "realization: synthetic or black");

    // ---- partition ----
    auto* part_cmd = app.add_subcommand("partition", "set partitions and their graphs");
    part_cmd->require_subcommand(1);
    auto* part_enum = part_cmd->add_subcommand("enumerate", "partitions of [n] by kind");
    int pe_n = 0;
    std::string pe_kind = "all";
    bool pe_count = false;
    part_enum->add_option("--n", pe_n)->required();
    part_enum->add_option("--kind", pe_kind, "all, noncrossing, connected, noncrossing-matching");
    part_enum->add_flag("--count", pe_count);
    auto* part_krew = part_cmd->add_subcommand("kreweras", "Kreweras complement");
    std::string krew_p;
    part_krew->add_option("partition", krew_p)->required();
    auto* part_tutte = part_cmd->add_subcommand(
        "tutte", "acyclic orientations of the crossing graph with a unique given source");
    std::string tutte_p;
    int tutte_src = 0;
    part_tutte->add_option("partition", tutte_p)->required();
    part_tutte->add_option("--source", tutte_src, "ground element whose block is the source "
                                                  "(default: the largest element)");
    auto* part_lin = part_cmd->add_subcommand("linext", "arch-graph linear extension count");
    std::string lin_p;
    bool lin_raw = false;
    part_lin->add_option("partition", lin_p, "noncrossing partition eta")->required();
    part_lin->add_flag("--raw", lin_raw,
                       "treat the input as the complement itself instead of applying K first");

    // ---- cumulant ----
    auto* cum_cmd = app.add_subcommand("cumulant", "moment/cumulant conversions");
    cum_cmd->require_subcommand(1);
    auto* cum_conv = cum_cmd->add_subcommand("convert", "convert a sequence between kinds");
    std::string cv_from, cv_to, cv_method = "recursion", cv_seq;
    int cv_len = 0;
    cum_conv->add_option("--from", cv_from, "moments, classical, or free")->required();
    cum_conv->add_option("--to", cv_to)->required();
    cum_conv->add_option("--method", cv_method,
                         "lattice, recursion, lehner, josuat, vhc, nc_linext, avoid231, series_log");
    cum_conv->add_option("--len", cv_len, "truncate/validate the sequence length");
    cum_conv->add_option("--seq", cv_seq, "sequence JSON or comma list of polynomial values")
        ->required();
    auto* cum_check = cum_cmd->add_subcommand("check-troupe", "troupe/cumulant correspondence");
    std::string ct_troupe = "BPT", ct_stats;
    int ct_n = 6;
    cum_check->add_option("--troupe", ct_troupe);
    cum_check->add_option("--stats", ct_stats, "comma list of statistics");
    cum_check->add_option("--n", ct_n, "check orders 1..N");
    auto* cum_rt = cum_cmd->add_subcommand("check-r-transform",
                                           "compositional-inverse relation at a truncation order");
    std::string rt_kappa, rt_m;
    int rt_order = 8;
    cum_rt->add_option("--kappa", rt_kappa, "comma list of rational free cumulants")->required();
    cum_rt->add_option("--moments", rt_m, "comma list of rational moments")->required();
    cum_rt->add_option("--order", rt_order);

    // ---- sequence ----
    auto* seq_cmd = app.add_subcommand("sequence", "named integer sequences");
    std::string sq_name;
    int sq_n = 10;
    seq_cmd->add_option("name", sq_name,
                        "catalan, aerated_catalan, motzkin, schroeder, euler, "
                        "double_factorial_odd, factorial")
        ->required();
    seq_cmd->add_option("--n", sq_n, "emit a_0..a_N");

    // ---- stat ----
    auto* stat_cmd = app.add_subcommand("stat", "stack-sorting statistics");
    stat_cmd->require_subcommand(1);
    auto* st_desc = stat_cmd->add_subcommand("descents", "descent polynomial of sorted images");
    int sd_n = 0;
    std::string sd_route = "cumulant";
    st_desc->add_option("--n", sd_n)->required();
    st_desc->add_option("--route", sd_route, "cumulant or enumerate");
    auto* st_exp = stat_cmd->add_subcommand("expected", "expected value of des(s(sigma))+1");
    int se_n = 0;
    st_exp->add_option("--n", se_n)->required();
    auto* st_mom = stat_cmd->add_subcommand("moments", "moments of des(s(sigma))+1");
    int sm_n = 0, sm_m = 1;
    st_mom->add_option("--n", sm_n)->required();
    st_mom->add_option("--m", sm_m, "moment order");
    auto* st_first = stat_cmd->add_subcommand("first-descent",
                                              "probability that a given index is a descent of "
                                              "s(sigma); exact formula at index 1, brute beyond");
    int sf_n = 0, sf_index = 1;
    st_first->add_option("--n", sf_n)->required();
    st_first->add_option("--index", sf_index, "descent position (brute force when > 1)");
    auto* st_sorted = stat_cmd->add_subcommand("sorted-count", "number of sorted permutations");
    int ss_m = 0;
    std::string ss_method = "recurrence";
    st_sorted->add_option("--m", ss_m)->required();
    st_sorted->add_option("--method", ss_method, "recurrence or brute");
    auto* st_deg = stat_cmd->add_subcommand("degree", "degree of noninvertibility");
    int dg_n = 0, dg_bound = 0;
    unsigned dg_digits = 5;
    st_deg->add_option("--n", dg_n, "exact degree for S_n");
    st_deg->add_option("--lower-bound", dg_bound, "free-cumulant lower-bound ingredient at order N");
    st_deg->add_option("--digits", dg_digits, "decimal digits for the root rendering");
    auto* st_two = stat_cmd->add_subcommand("two-stack", "weighted two-stack table");
    std::string tw_troupe = "BPT", tw_stats;
    int tw_n = 8;
    bool tw_check = false;
    st_two->add_option("--troupe", tw_troupe);
    st_two->add_option("--stats", tw_stats);
    st_two->add_option("--n", tw_n, "table computed for n + l <= N");
    st_two->add_flag("--check", tw_check, "also verify the functional equation");
    auto* st_three = stat_cmd->add_subcommand("three-stack", "three-stack recurrence value");
    std::string th_troupe = "BPT", th_stats;
    int th_n = 5;
    st_three->add_option("--troupe", th_troupe);
    st_three->add_option("--stats", th_stats);
    st_three->add_option("--n", th_n)->required();
    auto* st_uniq = stat_cmd->add_subcommand("uniquely-sorted", "uniquely sorted permutations");
    std::string us_perm;
    int us_n = 0;
    st_uniq->add_option("perm", us_perm, "test one permutation");
    st_uniq->add_option("--n", us_n, "count over S_n");
    auto* st_troupe_desc = stat_cmd->add_subcommand(
        "troupe-descents", "descent-weighted EGF of postorder readings of decreasing trees");
    std::string td_troupe = "BPT";
    int td_n = 8;
    st_troupe_desc->add_option("--troupe", td_troupe);
    st_troupe_desc->add_option("--n", td_n, "truncation order");

    // ---- verify ----
    auto* ver_cmd = app.add_subcommand("verify", "run the oracle-equivalence suites");
    std::vector<std::string> ver_names;
    bool ver_list = false;
    ver_cmd->add_option("suite", ver_names, "suite names, or 'all'");
    ver_cmd->add_flag("--list", ver_list, "list available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << Json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    }

    if (!config_path.empty()) cfg = Config::load(config_path);
    if (!format.empty()) cfg.format = format;
    if (decimal_digits) cfg.decimal_digits = decimal_digits;

    auto maybe_decimal = [&](const Rational& q) {
        return cfg.decimal_digits ? " (~" + decimal_string(q, cfg.decimal_digits) + ")" : "";
    };

    try {
        if (*sort_cmd) {
            Permutation pi = Permutation::parse(sort_perm);
            SortEngine eng = sort_engine == "recursive" ? SortEngine::recursive : SortEngine::stack;
            Permutation img = stack_sort(pi, eng);
            detail::emit(out, cfg, Json{{"input", pi.to_string()}, {"sorted", img.to_string()}},
                         img.to_string() + "\n");
        } else if (*fert_cmd) {
            Permutation pi = Permutation::parse(fert_perm);
            if (fert_report) {
                FertilityReport rep = fertility_report(pi, cfg.vhc_n);
                Json classes = Json::object();
                std::string text = "configurations: " + rep.vhc_count.str() +
                                   "\nfertility: " + rep.fertility.str() + "\n";
                for (const auto& [k, v] : rep.per_class) {
                    classes[k] = v.to_string();
                    text += k + ": " + v.to_string() + "\n";
                }
                detail::emit(out, cfg,
                             Json{{"perm", pi.to_string()},
                                  {"configurations", rep.vhc_count.str()},
                                  {"fertility", rep.fertility.str()},
                                  {"per_class", classes}},
                             text);
            } else {
                FertilityMethod m = fert_method == "brute" ? FertilityMethod::brute
                                                           : FertilityMethod::vhc_formula;
                Integer f =
                    fertility(pi, m, m == FertilityMethod::brute ? cfg.brute_perm_n : cfg.vhc_n);
                detail::emit(out, cfg, Json{{"perm", pi.to_string()}, {"fertility", f.str()}},
                             f.str() + "\n");
            }
        } else if (*pre_cmd) {
            Permutation pi = Permutation::parse(pre_perm);
            std::vector<Permutation> pres = brute_preimages(pi, cfg.brute_perm_n);
            Json arr = Json::array();
            std::string text, csv = "preimage\n";
            for (const Permutation& p : pres) {
                arr.push_back(p.to_string());
                text += p.to_string() + "\n";
                csv += p.to_string() + "\n";
            }
            detail::emit(out, cfg, Json{{"perm", pi.to_string()}, {"preimages", arr}}, text, csv);
        } else if (*vhc_enum) {
            Permutation pi = Permutation::parse(vhc_perm);
            Json arr = Json::array();
            std::string text;
            for (const ValidHookConfiguration& h : enumerate_vhc(pi, cfg.vhc_n)) {
                arr.push_back(vhc_to_json(h));
                text += h.to_string() + "\n";
            }
            detail::emit(out, cfg, Json{{"perm", pi.to_string()}, {"configurations", arr}}, text);
        } else if (*vhc_count) {
            if (vhc_upto > 0) {
                std::vector<long> counts;
                for (int n = 1; n <= vhc_upto; ++n) {
                    long c = 0;
                    for_each_vhc_all(n, vhc_avoid ? VhcRestrict::avoid231 : VhcRestrict::none,
                                     [&](const ValidHookConfiguration&) { ++c; }, cfg.vhc_n);
                    counts.push_back(c);
                }
                std::string text, csv = "n,value\n";
                for (size_t i = 0; i < counts.size(); ++i) {
                    text += (i ? "," : "") + std::to_string(counts[i]);
                    csv += std::to_string(i + 1) + "," + std::to_string(counts[i]) + "\n";
                }
                detail::emit(out, cfg, Json{{"upto", vhc_upto}, {"counts", counts}}, text + "\n",
                             csv);
            } else {
                Permutation pi = Permutation::parse(vhc_count_perm);
                long c = 0;
                for_each_vhc(pi, [&](const ValidHookConfiguration&) { ++c; }, cfg.vhc_n);
                detail::emit(out, cfg, Json{{"perm", pi.to_string()}, {"count", c}},
                             std::to_string(c) + "\n");
            }
        } else if (*vhc_phi) {
            ValidHookConfiguration h = ValidHookConfiguration::parse(vhc_phi_cfg);
            auto [rho, alpha] = phi(h);
            detail::emit(out, cfg,
                         Json{{"partition", rho.to_string()},
                              {"orientation", orientation_to_json(alpha)}},
                         rho.to_string() + "\n" +
                             orientation_to_json(alpha).dump() + "\n");
        } else if (*vhc_psi) {
            if (!psi_eta.empty() || !psi_sigma.empty()) {
                ValidHookConfiguration h =
                    psi_inverse(SetPartition::parse(psi_eta), Permutation::parse(psi_sigma));
                detail::emit(out, cfg, vhc_to_json(h), h.to_string() + "\n");
            } else {
                ValidHookConfiguration h = ValidHookConfiguration::parse(vhc_psi_cfg);
                auto [eta, sigma] = psi(h);
                detail::emit(out, cfg,
                             Json{{"eta", eta.to_string()}, {"sigma", sigma.to_string()}},
                             eta.to_string() + " " + sigma.to_string() + "\n");
            }
        } else if (*tree_ins) {
            Tree t = insert(parse_tree(ins_t1), ins_at, parse_tree(ins_t2));
            detail::emit(out, cfg, Json{{"tree", serialize(t)}}, serialize(t) + "\n");
        } else if (*tree_dec) {
            auto [t1, t2] = decompose(parse_tree(dec_tree), dec_at);
            detail::emit(out, cfg, Json{{"t1", serialize(t1)}, {"t2", serialize(t2)}},
                         serialize(t1) + "\n" + serialize(t2) + "\n");
        } else if (*tree_trav) {
            DTree t = parse_dtree(trav_tree);
            Traversal order = trav_order == "postorder" ? Traversal::postorder : Traversal::inorder;
            Permutation p = traverse(t, order);
            detail::emit(out, cfg, Json{{"reading", p.to_string()}}, p.to_string() + "\n");
        } else if (*tree_enum) {
            TroupeSpec spec = detail::parse_troupe(te_troupe, te_gens);
            if (!te_stats.empty()) {
                MultiPoly g = g_polynomial(spec, te_n, detail::parse_stats(te_stats), cfg.troupe_n);
                detail::emit(out, cfg, Json{{"n", te_n}, {"poly", g.to_string()}},
                             g.to_string() + "\n");
            } else if (te_decreasing) {
                auto trees = enumerate_decreasing(spec, te_n, cfg.troupe_n);
                Json arr = Json::array();
                std::string text;
                for (const DTree& t : trees) {
                    if (!te_count) {
                        arr.push_back(serialize(t));
                        text += serialize(t) + "\n";
                    }
                }
                if (te_count)
                    detail::emit(out, cfg, Json{{"n", te_n}, {"count", trees.size()}},
                                 std::to_string(trees.size()) + "\n");
                else
                    detail::emit(out, cfg, Json{{"n", te_n}, {"trees", arr}}, text);
            } else {
                auto trees = enumerate_troupe(spec, te_n, cfg.troupe_n);
                if (te_count) {
                    detail::emit(out, cfg, Json{{"n", te_n}, {"count", trees.size()}},
                                 std::to_string(trees.size()) + "\n");
                } else {
                    Json arr = Json::array();
                    std::string text;
                    for (const Tree& t : trees) {
                        arr.push_back(serialize(t));
                        text += serialize(t) + "\n";
                    }
                    detail::emit(out, cfg, Json{{"n", te_n}, {"trees", arr}}, text);
                }
            }
        } else if (*tree_tr) {
            RealizationStyle style = tr_style == "black" ? RealizationStyle::black_shapes
                                                         : RealizationStyle::synthetic_colors;
            std::vector<long> res =
                troupe_transform(detail::parse_long_list(tr_omega), tr_n, cfg.transform_n, style);
            std::string text, csv = "n,value\n";
            for (size_t i = 0; i < res.size(); ++i) {
                text += (i ? "," : "") + std::to_string(res[i]);
                csv += std::to_string(i) + "," + std::to_string(res[i]) + "\n";
            }
            detail::emit(out, cfg, Json{{"omega", detail::parse_long_list(tr_omega)},
                                        {"transform", res}},
                         text + "\n", csv);
        } else if (*part_enum) {
            auto parts = enumerate_partitions(
                pe_n, partition_kind_from_string(pe_kind),
                pe_kind == "noncrossing" ? cfg.noncrossing_n
                : pe_kind == "noncrossing-matching" ? kPartitionMatchingCap
                                                    : cfg.partition_n);
            if (pe_count) {
                detail::emit(out, cfg, Json{{"n", pe_n}, {"kind", pe_kind}, {"count", parts.size()}},
                             std::to_string(parts.size()) + "\n");
            } else {
                Json arr = Json::array();
                std::string text;
                for (const SetPartition& p : parts) {
                    arr.push_back(p.to_string());
                    text += p.to_string() + "\n";
                }
                detail::emit(out, cfg, Json{{"n", pe_n}, {"kind", pe_kind}, {"partitions", arr}},
                             text);
            }
        } else if (*part_krew) {
            SetPartition k = kreweras(SetPartition::parse(krew_p));
            detail::emit(out, cfg, Json{{"kreweras", k.to_string()}}, k.to_string() + "\n");
        } else if (*part_tutte) {
            SetPartition p = SetPartition::parse(tutte_p);
            int src = tutte_src > 0 ? tutte_src : p.ground().back();
            Integer t = tutte_point(crossing_graph(p), p.block_index_of(src));
            detail::emit(out, cfg, Json{{"partition", p.to_string()}, {"value", t.str()}},
                         t.str() + "\n");
        } else if (*part_lin) {
            SetPartition p = SetPartition::parse(lin_p);
            SetPartition kp = lin_raw ? p : kreweras(p);
            Integer c = linear_extension_count(kp);
            detail::emit(out, cfg,
                         Json{{"partition", p.to_string()}, {"complement", kp.to_string()},
                              {"count", c.str()}},
                         c.str() + "\n");
        } else if (*cum_conv) {
            CumulantSequence s;
            std::string trimmed = cv_seq;
            if (!trimmed.empty() && trimmed.front() == '{') {
                s = cumulant_sequence_from_json(Json::parse(trimmed));
                s.kind = seq_kind_from_string(cv_from);
            } else {
                s.kind = seq_kind_from_string(cv_from);
                std::istringstream is(trimmed);
                std::string tok;
                while (std::getline(is, tok, ';'))
                    if (!tok.empty()) s.values.push_back(MultiPoly::parse(tok));
            }
            if (cv_len > 0) {
                if (s.length() < cv_len)
                    throw std::invalid_argument("sequence shorter than --len");
                s.values.resize(cv_len);
            }
            ConvertCaps caps{cfg.partition_n, cfg.noncrossing_n, cfg.vhc_n};
            CumulantSequence r = convert(s, seq_kind_from_string(cv_to),
                                         convert_method_from_string(cv_method), caps);
            std::string text;
            for (int n = 1; n <= r.length(); ++n)
                text += "u_" + std::to_string(n) + " = " + r.at(n).to_string() + "\n";
            detail::emit(out, cfg, cumulant_sequence_to_json(r), text);
        } else if (*cum_check) {
            CheckReport rep = troupe_correspondence_check(
                detail::parse_troupe(ct_troupe, {}), detail::parse_stats(ct_stats), ct_n,
                cfg.troupe_n);
            detail::emit(out, cfg, Json{{"ok", rep.ok}, {"detail", rep.detail}},
                         std::string(rep.ok ? "OK" : "FAIL") + ": " + rep.detail + "\n");
            if (!rep.ok) return 1;
        } else if (*cum_rt) {
            auto to_seq = [&](const std::string& list, SeqKind kind) {
                CumulantSequence s;
                s.kind = kind;
                std::istringstream is(list);
                std::string tok;
                while (std::getline(is, tok, ','))
                    if (!tok.empty())
                        s.values.push_back(MultiPoly::constant(parse_rational(tok)));
                return s;
            };
            bool ok = verify_r_transform_relation(to_seq(rt_kappa, SeqKind::free_cumulants),
                                                  to_seq(rt_m, SeqKind::moments), rt_order);
            detail::emit(out, cfg, Json{{"ok", ok}, {"order", rt_order}},
                         std::string(ok ? "OK" : "FAIL") + "\n");
            if (!ok) return 1;
        } else if (*seq_cmd) {
            std::vector<Integer> vals = seq::sequence(seq::sequence_name_from_string(sq_name), sq_n);
            Json arr = Json::array();
            std::string text, csv = "n,value\n";
            for (size_t i = 0; i < vals.size(); ++i) {
                arr.push_back(vals[i].str());
                text += (i ? "," : "") + vals[i].str();
                csv += std::to_string(i) + "," + vals[i].str() + "\n";
            }
            detail::emit(out, cfg, Json{{"name", sq_name}, {"values", arr}}, text + "\n", csv);
        } else if (*st_desc) {
            DescentRoute route = sd_route == "enumerate" ? DescentRoute::enumerate
                                                         : DescentRoute::cumulant;
            if (route == DescentRoute::cumulant) check_cap("series_order", cfg.series_order, sd_n);
            MultiPoly p = sorted_descent_polynomial(sd_n, route, cfg.brute_perm_n);
            detail::emit(out, cfg, Json{{"n", sd_n}, {"poly", p.to_string()}},
                         p.to_string() + "\n");
        } else if (*st_exp) {
            Rational e = expected_descent(se_n);
            detail::emit(out, cfg, Json{{"n", se_n}, {"expected", e.str()}},
                         e.str() + maybe_decimal(e) + "\n");
        } else if (*st_mom) {
            Rational m = descent_moment(sm_n, sm_m);
            detail::emit(out, cfg, Json{{"n", sm_n}, {"m", sm_m}, {"moment", m.str()}},
                         m.str() + maybe_decimal(m) + "\n");
        } else if (*st_first) {
            Rational pr = sf_index == 1
                              ? first_descent_probability(sf_n)
                              : descent_position_probability_brute(sf_n, sf_index,
                                                                   cfg.brute_perm_n);
            detail::emit(out, cfg,
                         Json{{"n", sf_n}, {"index", sf_index}, {"probability", pr.str()}},
                         pr.str() + maybe_decimal(pr) + "\n");
        } else if (*st_sorted) {
            SortedCountMethod m = ss_method == "brute" ? SortedCountMethod::brute
                                                       : SortedCountMethod::recurrence;
            Integer c = sorted_count(ss_m, m, cfg.brute_perm_n);
            detail::emit(out, cfg, Json{{"m", ss_m}, {"count", c.str()}}, c.str() + "\n");
        } else if (*st_deg) {
            if (dg_bound > 0) {
                DegreeBound b = degree_lower_bound(dg_bound, dg_digits);
                detail::emit(out, cfg,
                             Json{{"N", b.N},
                                  {"minus_c_N", b.minus_c_N.str()},
                                  {"ratio", b.ratio.str()},
                                  {"root_decimal", b.root_decimal}},
                             "-c_N = " + b.minus_c_N.str() + "\nratio = " + b.ratio.str() +
                                 "\nroot ~ " + b.root_decimal + "\n");
            } else {
                Rational d = degree_noninvertibility(dg_n);
                detail::emit(out, cfg, Json{{"n", dg_n}, {"degree", d.str()}},
                             d.str() + maybe_decimal(d) + "\n");
            }
        } else if (*st_two) {
            TwoStackTable t = two_stack(detail::parse_troupe(tw_troupe, {}),
                                        detail::parse_stats(tw_stats), tw_n, cfg.two_stack_n);
            Json rows = Json::array();
            std::string text, csv = "n,l,poly\n";
            for (int n = 0; n <= t.N; ++n)
                for (int l = 0; n + l <= t.N; ++l) {
                    rows.push_back(Json{{"n", n}, {"l", l}, {"poly", t.entry[n][l].to_string()}});
                    csv += std::to_string(n) + "," + std::to_string(l) + "," +
                           t.entry[n][l].to_string() + "\n";
                    if (l == 0) text += "n=" + std::to_string(n) + ": " +
                                        t.entry[n][0].to_string() + "\n";
                }
            bool ok = true;
            if (tw_check) ok = functional_equation_check(t);
            Json doc{{"N", t.N}, {"entries", rows}};
            if (tw_check) doc["functional_equation"] = ok;
            detail::emit(out, cfg, doc,
                         text + (tw_check ? std::string("functional equation: ") +
                                                (ok ? "OK" : "FAIL") + "\n"
                                          : ""),
                         csv);
            if (tw_check && !ok) return 1;
        } else if (*st_three) {
            MultiPoly p = three_stack(detail::parse_troupe(th_troupe, {}),
                                      detail::parse_stats(th_stats), th_n, cfg.three_stack_n);
            detail::emit(out, cfg, Json{{"n", th_n}, {"poly", p.to_string()}},
                         p.to_string() + "\n");
        } else if (*st_troupe_desc) {
            check_cap("series_order", cfg.series_order, td_n);
            TruncatedSeries s = troupe_descent_series(detail::parse_troupe(td_troupe, {}), td_n,
                                                      cfg.troupe_n);
            std::string text;
            for (int n = 0; n <= s.order(); ++n)
                text += "z^" + std::to_string(n) + ": " + s.coeff(n).to_string() + "\n";
            detail::emit(out, cfg, series_to_json(s), text);
        } else if (*st_uniq) {
            if (us_n > 0) {
                Integer c = count_uniquely_sorted(us_n);
                detail::emit(out, cfg, Json{{"n", us_n}, {"count", c.str()}}, c.str() + "\n");
            } else {
                Permutation pi = Permutation::parse(us_perm);
                bool u = uniquely_sorted(pi, cfg.vhc_n);
                detail::emit(out, cfg, Json{{"perm", pi.to_string()}, {"uniquely_sorted", u}},
                             std::string(u ? "yes" : "no") + "\n");
            }
        } else if (*ver_cmd) {
            if (ver_list) {
                std::string text;
                for (const std::string& n : verify::suite_names()) text += n + "\n";
                detail::emit(out, cfg, Json{{"suites", verify::suite_names()}}, text);
                return 0;
            }
            std::vector<std::string> names = ver_names;
            if (names.empty() || (names.size() == 1 && names[0] == "all"))
                names = verify::suite_names();
            bool all_ok = true;
            Json results = Json::array();
            for (const std::string& name : names) {
                verify::SuiteResult r = verify::run_suite(name);
                results.push_back(Json{{"criterion", r.criterion},
                                       {"name", r.name},
                                       {"pass", r.pass},
                                       {"blocking", r.blocking},
                                       {"detail", r.detail}});
                out << "[" << (r.pass ? "PASS" : (r.blocking ? "FAIL" : "WARN")) << "] " << r.name
                    << ": " << r.detail << "\n";
                if (!r.pass && r.blocking) all_ok = false;
            }
            if (cfg.format == "json") out << Json{{"results", results}}.dump(2) << "\n";
            return all_ok ? 0 : 1;
        }
    } catch (const resource_limit_error& e) {
        err << Json{{"error",
                     {{"type", "resource-limit"},
                      {"cap", e.cap_name()},
                      {"cap_value", e.cap_value()},
                      {"requested", e.requested()},
                      {"message", e.what()}}}}
                   .dump()
            << "\n";
        return 3;
    } catch (const unsupported_error& e) {
        err << Json{{"error", {{"type", "unsupported"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << Json{{"error", {{"type", "invalid-argument"}, {"message", e.what()}}}}.dump()
            << "\n";
        return 2;
    }
    return 0;
}

}  // namespace troupes::cli
