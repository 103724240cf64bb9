// ppo: command-line front end over the path-order library.
// Subcommands: compare, enumerate, stats, hasse, beta, construct, simulate.
// Successful results go to stdout (JSON/CSV/DOT); every error is a single
// JSON line on stderr.  Exit codes: 0 success, 2 usage/input error,
// 3 resource-budget abort.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "polarpo/bec.hpp"
#include "polarpo/beta.hpp"
#include "polarpo/bounds.hpp"
#include "polarpo/degradation.hpp"
#include "polarpo/path.hpp"
#include "polarpo/podb.hpp"
#include "polarpo/rules.hpp"
#include "polarpo/sim.hpp"

namespace {

using nlohmann::json;
using namespace polarpo;

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool file_exists(const std::string& p) {
    struct stat st {};
    return ::stat(p.c_str(), &st) == 0;
}

// --db arguments resolve against the working directory first, then against
// $POLARPO_DB_DIR for shared databases.
std::string resolve_db(const std::string& path) {
    if (file_exists(path) || path.find('/') == 0) return path;
    if (const char* dir = std::getenv("POLARPO_DB_DIR")) {
        std::string alt = std::string(dir) + "/" + path;
        if (file_exists(alt)) return alt;
    }
    return path;
}

// Provenance lines look like "z: 1100 <= 1011   [rule name]" with premises
// indented below; pull the rule label and the first cited premise for the
// compact JSON fields.
std::string rule_of(const std::string& prov) {
    size_t nl = prov.find('\n');
    std::string head = prov.substr(0, nl == std::string::npos ? prov.size() : nl);
    size_t l = head.rfind('['), r = head.rfind(']');
    if (l == std::string::npos || r == std::string::npos || r < l) return {};
    return head.substr(l + 1, r - l - 1);
}

std::string premise_of(const std::string& prov) {
    size_t nl = prov.find('\n');
    if (nl == std::string::npos) return {};
    size_t end = prov.find('\n', nl + 1);
    std::string line = prov.substr(nl + 1, (end == std::string::npos ? prov.size() : end) - nl - 1);
    size_t at = line.find_first_not_of(' ');
    return at == std::string::npos ? std::string{} : line.substr(at);
}

const char* kind_suffix(uint8_t kind) {
    switch (kind) {
        case REL_DEG: return "deg";
        case REL_Z: return "Z";
        case REL_P: return "P";
        case REL_BEC: return "BEC";
    }
    return "?";
}

uint8_t parse_kind(const std::string& s) {
    if (s == "deg") return REL_DEG;
    if (s == "z") return REL_Z;
    if (s == "p") return REL_P;
    if (s == "bec") return REL_BEC;
    throw std::invalid_argument("unknown relation kind: " + s);
}

json relation_json(const Relation& rel) {
    return json{{"verdict", rel.worse.str() + " ≼_" + kind_suffix(rel.kind) + " " + rel.better.str()},
                {"relation", kind_suffix(rel.kind)},
                {"worse", rel.worse.str()},
                {"better", rel.better.str()},
                {"rule", rule_of(rel.provenance)},
                {"premise", premise_of(rel.provenance)},
                {"trace", rel.provenance}};
}

json bec_json(const Path& a, const Path& b, const BecVerdict& v) {
    json out{{"relation", "BEC"}, {"certificate", v.certificate}};
    switch (v.relation) {
        case BecRel::LEQ: out["verdict"] = a.str() + " ≼_BEC " + b.str(); break;
        case BecRel::GEQ: out["verdict"] = b.str() + " ≼_BEC " + a.str(); break;
        case BecRel::EQUAL: out["verdict"] = "EQUAL"; break;
        case BecRel::INCOMPARABLE: out["verdict"] = "incomparable"; break;
    }
    if (v.witness_low) out["witness_low"] = v.witness_low->str();
    if (v.witness_high) out["witness_high"] = v.witness_high->str();
    return out;
}

json deg_json(const Path& a, const Path& b, const DegVerdict& v) {
    json out{{"relation", "deg"}};
    switch (v.direction) {
        case DegDir::LEQ: out["verdict"] = a.str() + " ≼_deg " + b.str(); break;
        case DegDir::GEQ: out["verdict"] = b.str() + " ≼_deg " + a.str(); break;
        case DegDir::EQUAL: out["verdict"] = "EQUAL"; break;
        case DegDir::INCOMPARABLE: out["verdict"] = "incomparable"; break;
    }
    out["rewrite_steps"] = v.trace.size();
    return out;
}

json interval_json(const BetaInterval& iv) {
    auto end_json = [](const std::optional<BetaEndpoint>& e) -> json {
        if (!e) return nullptr;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", e->approx);
        return json{{"approx", buf}, {"isolating", {e->lo.str(), e->hi.str()}}};
    };
    return json{{"lo", end_json(iv.lo)}, {"hi", end_json(iv.hi)}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::printf("%s\n", j.dump().c_str());
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << j.dump() << "\n";
}

std::vector<double> parse_sweep(const std::string& s) {
    // "A:STEP:B" inclusive sweep, or a single value
    std::vector<double> pts;
    size_t c1 = s.find(':');
    if (c1 == std::string::npos) {
        pts.push_back(std::stod(s));
        return pts;
    }
    size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("sweep must be A:STEP:B or a single value");
    double a = std::stod(s.substr(0, c1));
    double step = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    double b = std::stod(s.substr(c2 + 1));
    if (step <= 0) throw std::invalid_argument("sweep step must be positive");
    for (double v = a; v <= b + step * 1e-9; v += step) pts.push_back(v);
    return pts;
}

InfoSet load_info_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    size_t at = text.find_first_not_of(" \t\r\n");
    InfoSet s;
    if (at != std::string::npos && text[at] == '{') {
        json j = json::parse(text);
        s.n = j.at("n").get<int>();
        s.K = j.at("K").get<int>();
        for (const auto& v : j.at("indices")) s.indices.push_back(v.get<uint32_t>());
    } else {
        std::istringstream in(text);
        long v;
        uint32_t max_idx = 0;
        while (in >> v) {
            if (v < 0) throw std::runtime_error("negative index in " + path);
            s.indices.push_back(uint32_t(v));
            max_idx = std::max(max_idx, uint32_t(v));
        }
        int n = 0;
        while ((uint32_t(1) << n) <= max_idx) ++n;
        s.n = n;
        s.K = int(s.indices.size());
    }
    std::sort(s.indices.begin(), s.indices.end());
    return s;
}

InfoMethod parse_method(const std::string& m) {
    size_t c = m.find(':');
    std::string kind = m.substr(0, c);
    std::string arg = c == std::string::npos ? "" : m.substr(c + 1);
    if (kind == "bec") return InfoMethod::from_bec(arg.empty() ? 0.5 : std::stod(arg));
    if (kind == "beta") return InfoMethod::from_beta(arg.empty() ? 1.0 : std::stod(arg));
    if (kind == "file") {
        if (arg.empty()) throw std::invalid_argument("method file needs a path: file:PATH");
        return InfoMethod::from_file(arg);
    }
    throw std::invalid_argument("unknown method: " + m);
}

std::vector<std::pair<uint32_t, uint32_t>> load_mods(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<std::pair<uint32_t, uint32_t>> mods;
    long a, b;
    while (f >> a >> b) {
        if (a < 0 || b < 0) throw std::runtime_error("negative index in " + path);
        mods.emplace_back(uint32_t(a), uint32_t(b));
    }
    return mods;
}

int cmd_compare(const std::string& a_str, const std::string& b_str, const std::string& relation,
                int cert_budget) {
    Path a = parse_path(a_str), b = parse_path(b_str);
    if (a.size() != b.size()) throw std::invalid_argument("paths must have equal length");

    auto guard_bec = [&] {
        if (int(a.size()) > cert_budget)
            throw BudgetError("certificate budget " + std::to_string(cert_budget) +
                              " exceeded (paths of length " + std::to_string(a.size()) +
                              "); raise --cert-budget to force the exact polynomial check");
    };

    if (relation == "deg") {
        emit(deg_json(a, b, deg_leq(a, b)), "");
        return 0;
    }
    if (relation == "bec") {
        guard_bec();
        emit(bec_json(a, b, bec_leq(a, b)), "");
        return 0;
    }
    if (relation == "z" || relation == "p") {
        uint8_t kind = parse_kind(relation);
        if (auto rel = derive_pair(a, b, kind)) {
            emit(relation_json(*rel), "");
            return 0;
        }
        if (auto rel = derive_pair(b, a, kind)) {
            emit(relation_json(*rel), "");
            return 0;
        }
        emit(json{{"verdict", "undecided"},
                  {"relation", kind_suffix(kind)},
                  {"note", "no derivation found at the configured search depth; "
                           "the pair may still be ordered"}},
             "");
        return 0;
    }

    // auto: strongest decided relation wins, one exact negative settles it
    if (DegVerdict d = deg_leq(a, b); d.comparable) {
        emit(deg_json(a, b, d), "");
        return 0;
    }
    for (uint8_t kind : {uint8_t(REL_Z), uint8_t(REL_P)}) {
        if (auto rel = derive_pair(a, b, kind)) {
            emit(relation_json(*rel), "");
            return 0;
        }
        if (auto rel = derive_pair(b, a, kind)) {
            emit(relation_json(*rel), "");
            return 0;
        }
    }
    guard_bec();
    BecVerdict v = bec_leq(a, b);
    json out = bec_json(a, b, v);
    if (v.relation == BecRel::INCOMPARABLE)
        out["note"] = "incomparable on the erasure family, hence in every order";
    else
        out["note"] = "degradation-incomparable and no Z/P derivation found; "
                      "erasure-order verdict shown";
    emit(out, "");
    return 0;
}

int cmd_enumerate(int n, const std::string& out, const std::string& format,
                  const std::string& engine, bool item3, int grid_points, int tau_budget,
                  const std::string& budget) {
    if (n > 8 && budget != "full")
        throw BudgetError("enumerate --n " + std::to_string(n) +
                          " is a long-running action; pass --budget full to confirm");
    PoDb db = [&] {
        if (engine == "rules") {
            RuleConfig cfg;
            cfg.tau_budget = tau_budget;
            return saturate(n, cfg);
        }
        BuildConfig cfg;
        cfg.deg_item3 = item3;
        cfg.grid_points = grid_points;
        return build(n, cfg);
    }();

    DbFormat fmt;
    if (format == "json" || (format == "auto" && out.size() > 5 && out.rfind(".json") == out.size() - 5))
        fmt = DbFormat::json;
    else
        fmt = DbFormat::binary;
    export_db(db, fmt, out);

    DbStats st = stats(db);
    emit(json{{"n", db.n},
              {"partial", db.partial},
              {"config", db.config},
              {"deg", st.deg},
              {"z", st.z},
              {"z_beyond_deg", st.z_beyond_deg},
              {"out", out}},
         "");
    return 0;
}

int cmd_stats(const std::string& db_path) {
    PoDb db = import_db(resolve_db(db_path));
    DbStats st = stats(db);
    emit(json{{"n", db.n},
              {"partial", db.partial},
              {"config", db.config},
              {"universe_pairs", st.universe_pairs},
              {"deg", st.deg},
              {"z", st.z},
              {"z_beyond_deg", st.z_beyond_deg},
              {"unknown", st.unknown}},
         "");
    return 0;
}

int cmd_hasse(const std::string& db_path, const std::string& kind, const std::string& out) {
    PoDb db = import_db(resolve_db(db_path));
    export_db(db, DbFormat::dot, out, parse_kind(kind));
    emit(json{{"out", out}, {"kind", kind}}, "");
    return 0;
}

int cmd_beta(const std::string& db_path, const std::string& kind, const std::string& pairs_path,
             const std::vector<std::string>& pair) {
    if (!pair.empty()) {
        if (pair.size() != 2) throw std::invalid_argument("need exactly two paths");
        Path w = parse_path(pair[0]), b = parse_path(pair[1]);
        json iv = json::array();
        for (const BetaInterval& i : feasible_interval(w, b)) iv.push_back(interval_json(i));
        emit(json{{"worse", w.str()},
                  {"better", b.str()},
                  {"constraint", beta_constraint(w, b)},
                  {"intervals", iv}},
             "");
        return 0;
    }
    if (!pairs_path.empty()) {
        std::ifstream f(pairs_path);
        if (!f) throw std::runtime_error("cannot open " + pairs_path);
        json rows = json::array();
        std::string ws, bs;
        while (f >> ws >> bs) {
            Path w = parse_path(ws), b = parse_path(bs);
            json iv = json::array();
            for (const BetaInterval& i : feasible_interval(w, b)) iv.push_back(interval_json(i));
            rows.push_back(json{{"worse", w.str()},
                                {"better", b.str()},
                                {"constraint", beta_constraint(w, b)},
                                {"intervals", iv}});
        }
        emit(rows, "");
        return 0;
    }
    if (db_path.empty()) throw std::invalid_argument("need --db, --pairs, or two paths");
    PoDb db = import_db(resolve_db(db_path));
    BetaWindow w = feasible_window(db, parse_kind(kind));
    json full = json::array();
    for (const BetaInterval& i : w.full) full.push_back(interval_json(i));
    emit(json{{"kind", kind},
              {"constraints", w.constraints},
              {"binding", w.binding},
              {"around_one", w.around_one ? interval_json(*w.around_one) : json(nullptr)},
              {"full", full}},
         "");
    return 0;
}

int cmd_construct(int n, int k, const std::string& method, const std::string& mods_path,
                  const std::string& out) {
    std::vector<std::pair<uint32_t, uint32_t>> mods;
    if (!mods_path.empty()) mods = load_mods(mods_path);
    InfoSet s = build_info_set(n, k, parse_method(method), mods);
    emit(json{{"n", s.n}, {"K", s.K}, {"indices", s.indices}}, out);
    return 0;
}

int cmd_simulate(int n, int k, const std::string& info_path, const std::string& method,
                 const std::string& channel, const std::string& sweep, uint64_t frames,
                 uint64_t seed, bool min_sum, const std::string& out) {
    InfoSet info;
    if (!info_path.empty()) {
        info = load_info_set(info_path);
        if (k > 0 && k != int(info.indices.size()))
            throw std::invalid_argument("--k disagrees with the info-set file");
    } else if (!method.empty()) {
        if (n <= 0) throw std::invalid_argument("--n required when constructing inline");
        info = build_info_set(n, k, parse_method(method));
    } else {
        throw std::invalid_argument("need --info-set FILE or --method M");
    }

    std::string ch = channel.substr(0, channel.find(':'));
    BmsChannel base = BmsChannel::bec(0.1);  // parameter comes from the sweep
    if (ch == "awgn" || ch == "biawgn")
        base = BmsChannel::biawgn(1.0);
    else if (ch == "bsc")
        base = BmsChannel::bsc(0.1);
    else if (ch != "bec")
        throw std::invalid_argument("unknown channel: " + channel);

    std::vector<SimResult> rows = simulate(base, parse_sweep(sweep), info, frames, seed, min_sum);
    std::string csv = sim_csv(rows);
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot open " + out);
        f << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial orders between polar polarization paths"};
    app.require_subcommand(1);

    // compare
    auto* c_cmp = app.add_subcommand("compare", "decide the order between two paths");
    std::vector<std::string> cmp_paths;
    std::string cmp_rel = "auto";
    int cert_budget = 12;
    c_cmp->add_option("paths", cmp_paths, "two equal-length paths")->expected(2);
    c_cmp->add_option("--relation", cmp_rel, "deg|bec|z|p|auto")
        ->check(CLI::IsMember({"deg", "bec", "z", "p", "auto"}));
    c_cmp->add_option("--cert-budget", cert_budget,
                      "longest path length for exact polynomial certificates");

    // enumerate
    auto* c_enum = app.add_subcommand("enumerate", "build and export a relation database");
    int enum_n = 3;
    std::string enum_out, enum_fmt = "auto", enum_engine = "families", enum_budget = "small";
    bool enum_item3 = false;
    int enum_grid = 257, enum_tau = 3;
    c_enum->add_option("--n", enum_n, "path length")->required()->check(CLI::Range(1, 12));
    c_enum->add_option("--out", enum_out, "output file (.json or binary)")->required();
    c_enum->add_option("--format", enum_fmt, "json|binary|auto")
        ->check(CLI::IsMember({"json", "binary", "auto"}));
    c_enum->add_option("--engine", enum_engine, "families|rules")
        ->check(CLI::IsMember({"families", "rules"}));
    c_enum->add_flag("--item3", enum_item3, "also saturate the suffix-promotion rule");
    c_enum->add_option("--grid-points", enum_grid, "rejection grid size");
    c_enum->add_option("--tau-budget", enum_tau, "rules engine: longest inserted block");
    c_enum->add_option("--budget", enum_budget, "small|full (n > 8 needs full)")
        ->check(CLI::IsMember({"small", "full"}));

    // stats
    auto* c_stats = app.add_subcommand("stats", "counts stored in a database");
    std::string stats_db;
    c_stats->add_option("--db", stats_db, "database file")->required();

    // hasse
    auto* c_hasse = app.add_subcommand("hasse", "export a transitive reduction as DOT");
    std::string hasse_db, hasse_kind = "deg", hasse_out;
    c_hasse->add_option("--db", hasse_db, "database file")->required();
    c_hasse->add_option("--kind", hasse_kind, "deg|z|p|bec")
        ->check(CLI::IsMember({"deg", "z", "p", "bec"}));
    c_hasse->add_option("--out", hasse_out, "output .dot file")->required();

    // beta
    auto* c_beta = app.add_subcommand("beta", "feasible expansion bases");
    std::string beta_db, beta_kind = "z", beta_pairs;
    std::vector<std::string> beta_pair;
    c_beta->add_option("--db", beta_db, "window over all pairs of a database");
    c_beta->add_option("--kind", beta_kind, "deg|z|p|bec")
        ->check(CLI::IsMember({"deg", "z", "p", "bec"}));
    c_beta->add_option("--pairs", beta_pairs, "file of 'worse better' lines");
    c_beta->add_option("paths", beta_pair, "one pair inline")->expected(0, 2);

    // construct
    auto* c_cons = app.add_subcommand("construct", "build an information set");
    int cons_n = 0, cons_k = 0;
    std::string cons_method, cons_mods, cons_out;
    c_cons->add_option("--n", cons_n, "path length")->required()->check(CLI::Range(0, 20));
    c_cons->add_option("--k", cons_k, "information set size")->required();
    c_cons->add_option("--method", cons_method, "bec:EPS | beta:B | file:PATH")->required();
    c_cons->add_option("--mods", cons_mods, "file of 'out in' swap lines");
    c_cons->add_option("--out", cons_out, "write JSON here instead of stdout");

    // simulate
    auto* c_sim = app.add_subcommand("simulate", "all-zero-codeword Monte Carlo");
    int sim_n = 0, sim_k = 0;
    std::string sim_info, sim_method, sim_channel = "awgn", sim_sweep = "2.0", sim_out;
    uint64_t sim_frames = 10000, sim_seed = 1;
    bool sim_minsum = false;
    int sim_threads = 1;
    c_sim->add_option("--n", sim_n, "path length (inline construction)");
    c_sim->add_option("--k", sim_k, "information set size");
    c_sim->add_option("--info-set", sim_info, "info set file (JSON or index lines)");
    c_sim->add_option("--method", sim_method, "inline construction: bec:EPS | beta:B | file:PATH");
    c_sim->add_option("--channel", sim_channel, "bec|bsc|awgn");
    c_sim->add_option("--snr-db", sim_sweep, "A:STEP:B (Es/N0 dB for awgn, raw parameter otherwise)");
    c_sim->add_option("--frames", sim_frames, "frames per point");
    c_sim->add_option("--seed", sim_seed, "RNG seed");
    c_sim->add_flag("--min-sum", sim_minsum, "min-sum check combines");
    c_sim->add_option("--threads", sim_threads, "worker count (results are scheduling-independent)")
        ->check(CLI::Range(1, 256));
    c_sim->add_option("--out", sim_out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", json{{"error", e.what()}}.dump().c_str());
        return 2;
    }

    try {
        if (c_cmp->parsed()) return cmd_compare(cmp_paths[0], cmp_paths[1], cmp_rel, cert_budget);
        if (c_enum->parsed())
            return cmd_enumerate(enum_n, enum_out, enum_fmt, enum_engine, enum_item3, enum_grid,
                                 enum_tau, enum_budget);
        if (c_stats->parsed()) return cmd_stats(stats_db);
        if (c_hasse->parsed()) return cmd_hasse(hasse_db, hasse_kind, hasse_out);
        if (c_beta->parsed()) return cmd_beta(beta_db, beta_kind, beta_pairs, beta_pair);
        if (c_cons->parsed()) return cmd_construct(cons_n, cons_k, cons_method, cons_mods, cons_out);
        if (c_sim->parsed())
            return cmd_simulate(sim_n, sim_k, sim_info, sim_method, sim_channel, sim_sweep,
                                sim_frames, sim_seed, sim_minsum, sim_out);
    } catch (const BudgetError& e) {
        std::fprintf(stderr, "%s\n", json{{"error", e.what()}, {"budget", true}}.dump().c_str());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", json{{"error", e.what()}}.dump().c_str());
        return 2;
    }
    return 2;
}
