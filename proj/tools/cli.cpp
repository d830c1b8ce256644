#include "laver/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "laver/conjectures.hpp"
#include "laver/crit.hpp"
#include "laver/omega.hpp"
#include "laver/store.hpp"
#include "laver/word.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace laver::cli {
namespace {

using nlohmann::json;

struct Globals {
    std::string format = "text";
    int workers = 1;
    std::string cache_dir;
    bool no_cache = false;
    bool strict_cache = false;
    std::uint64_t max_entries = BuildLimits{}.max_entries;
    bool timing = false;
    bool exhaustive = false;
    std::size_t max_reported = 100;
};

// What a subcommand produces; rendered according to --format.
struct Output {
    json args = json::object();
    json result;
    std::string text;
    std::string csv;
    int exit_code = kExitOk;
    Rank max_table_rank = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

store::CacheOptions cache_options(const Globals& g) {
    store::CacheOptions options;
    options.dir = g.cache_dir;
    options.enabled = !g.no_cache;
    options.on_corrupt = g.strict_cache ? store::OnCorrupt::fail : store::OnCorrupt::rebuild;
    options.limits.max_entries = g.max_entries;
    return options;
}

TableTower tower_through(Rank m, const Globals& g) { return store::load_tower(m, cache_options(g)); }

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + "\n";
}

json certified_json(const CertifiedIndex& r) {
    return {{"value", r.value.idx}, {"certified", r.certified}, {"bound", r.bound}};
}

std::string certified_text(const CertifiedIndex& r) {
    std::string s = std::to_string(r.value.idx);
    if (!r.certified) s += " (uncertified lower bound; tables end at A_" + std::to_string(r.bound) + ")";
    return s;
}

json report_json(const VerificationReport& r, const TableTower& tower, const SweepOptions& options, bool timing) {
    json examples = json::array();
    for (const auto& w : r.counterexamples) {
        json fields = json::object();
        for (const auto& [k, v] : w.fields) fields[k] = v;
        json entry = {{"a", w.a},
                      {"kind", w.kind == Witness::Kind::violation ? "violation" : "undecided"},
                      {"fields", fields}};
        if (r.check == Check::uh || r.check == Check::weak_uh) entry["b"] = w.b;
        if (w.kind == Witness::Kind::violation) entry["revalidated"] = revalidate(r.check, r.n, w, tower, options);
        examples.push_back(std::move(entry));
    }
    json j = {{"check", std::string(check_name(r.check))},
              {"n", r.n},
              {"status", std::string(status_name(r.status))},
              {"elements_checked", r.elements_checked},
              {"qualifying", r.qualifying},
              {"violations", r.violations},
              {"undecided", r.undecided},
              {"full_range", r.full_range},
              {"counterexamples", examples}};
    if (timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

std::string report_text(const VerificationReport& r, const TableTower& tower, const SweepOptions& options) {
    std::ostringstream s;
    s << check_name(r.check) << " n=" << r.n << ": " << status_name(r.status) << " (" << r.elements_checked
      << " checked, " << r.qualifying << " qualifying, " << r.violations << " violations";
    if (r.undecided) s << ", " << r.undecided << " undecided";
    s << ")\n";
    for (const auto& w : r.counterexamples) {
        s << "  " << (w.kind == Witness::Kind::violation ? "counterexample" : "undecided") << " a=" << w.a;
        if (r.check == Check::uh || r.check == Check::weak_uh) s << " b=" << w.b;
        for (const auto& [k, v] : w.fields) s << ' ' << k << '=' << v;
        if (w.kind == Witness::Kind::violation) {
            if (!revalidate(r.check, r.n, w, tower, options)) {
                s << " [does not revalidate: internal error]";
            } else {
                s << (options.drop_range_hypothesis ? " [revalidated]" : " [revalidated: possible discovery]");
            }
        }
        s << '\n';
    }
    return s.str();
}

// Regression vectors; each entry is (name, passed).
std::vector<std::pair<std::string, bool>> selftest_vectors(const TableTower& tower) {
    std::vector<std::pair<std::string, bool>> out;
    auto expect = [&](std::string name, bool ok) { out.emplace_back(std::move(name), ok); };

    expect("A_5: 5*1 = 6", tower.apply(5, 5, 1) == 6);
    expect("A_5: t(5) = 2", tower.at(5).threshold(5) == 2);
    expect("gamma_5 not in range(6)", !in_range(6, GammaIndex{5}, tower));
    expect("A_10: t(34) = 5", tower.at(10).threshold(34) == 5);
    expect("A_9: 34 o 4 = 242", tower.compose(9, 34, 4) == 242);
    expect("gamma_9 not in range(242)", !in_range(242, GammaIndex{9}, tower));
    expect("A_9: 48*51 = 243", tower.apply(9, 48, 51) == 243);
    expect("A_9: 192*51 = 243", tower.apply(9, 192, 51) == 243);
    const auto a7 = act_on_gamma(48, GammaIndex{7}, tower);
    const auto b7 = act_on_gamma(192, GammaIndex{7}, tower);
    expect("48 . gamma_7 = gamma_9", a7.certified && a7.value.idx == 9);
    expect("192 . gamma_7 = gamma_9", b7.certified && b7.value.idx == 9);
    const auto c3 = act_on_gamma(51, GammaIndex{3}, tower);
    expect("51 . gamma_3 = gamma_7", c3.certified && c3.value.idx == 7);

    static const char* const kPrefix =
        "\xce\xb3_0\n\xce\xb3_1\n1\"\xce\xb3_1\n\xce\xb3_2\n3\"\xce\xb3_1\n\xce\xb3_3\n7\"\xce\xb3_1\n4\"\xce\xb3_3\n"
        "3\"\xce\xb3_2\n2\"\xce\xb3_2\n1\"\xce\xb3_2\n\xce\xb3_4\n15\"\xce\xb3_1\n12\"\xce\xb3_3\n3\"\xce\xb3_3\n"
        "\xce\xb3_5\n31\"\xce\xb3_1\n28\"\xce\xb3_3\n19\"\xce\xb3_3\n16\"\xce\xb3_5\n15\"\xce\xb3_2\n2\"\xce\xb3_3\n";
    expect("ordinals below gamma_6", render_text(enumerate_below(6, tower)) == kPrefix);
    return out;
}

void add_rank(CLI::App* cmd, Rank& n, const char* help = "rank n of A_n") {
    cmd->add_option("--n", n, help)->required()->check(CLI::Range(0u, kMaxRank - 1));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals g;
#ifdef _OPENMP
    g.workers = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("LAVER_CACHE_DIR"); env && *env) {
        g.cache_dir = env;
    } else {
        g.cache_dir = "laver-cache";
    }

    CLI::App app{"Laver tables, critical points and the ordinals between them"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--workers", g.workers, "worker threads for sweeps (0 = serial reference)")
        ->check(CLI::Range(0, 1024));
    app.add_option("--cache-dir", g.cache_dir, "table cache directory (env LAVER_CACHE_DIR)");
    app.add_flag("--no-cache", g.no_cache, "neither read nor write cached tables");
    app.add_flag("--strict-cache", g.strict_cache, "fail on a corrupt cache file instead of rebuilding");
    app.add_option("--max-entries", g.max_entries, "cap on stored entries per table");
    app.add_flag("--timing", g.timing, "include wall-clock timings in the output");
    app.add_flag("--exhaustive", g.exhaustive, "report every counterexample");
    app.add_option("--max-reported", g.max_reported, "counterexamples kept per report");

    std::function<Output()> handler;
    std::string command_name;
    auto sub = [&](const char* name, const char* help) {
        return app.add_subcommand(name, help);
    };

    // build
    Rank build_n = 0;
    bool build_rows = false;
    auto* build = sub("build", "build (or load) A_n and store it in the cache");
    add_rank(build, build_n);
    build->add_flag("--rows", build_rows, "include every row in json output");
    build->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"n", build_n}};
            const auto started = std::chrono::steady_clock::now();
            const LaverTable t = store::load_or_build(build_n, cache_options(g));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            o.max_table_rank = build_n;
            o.result = {{"n", build_n}, {"size", t.size()}, {"entries", t.total_entries()},
                        {"value_width", t.value_width()}};
            if (!g.no_cache) o.result["cache_file"] = store::cache_path(g.cache_dir, build_n).string();
            if (g.timing) o.result["seconds"] = secs;
            if (build_rows) {
                json rows = json::array();
                for (std::uint64_t a = 0; a < t.size(); ++a) rows.push_back(t.row(static_cast<Element>(a)));
                o.result["rows"] = rows;
            }
            std::ostringstream text;
            text << "A_" << build_n << ": " << t.size() << " elements, " << t.total_entries() << " stored entries, "
                 << t.value_width() << "-byte values\n";
            o.text = text.str();
            o.csv = "a,period,row\n";
            for (std::uint64_t a = 0; a < t.size(); ++a) {
                std::string row;
                for (Element v : t.row(static_cast<Element>(a))) row += (row.empty() ? "" : " ") + std::to_string(v);
                o.csv += csv_line({std::to_string(a), std::to_string(t.period(static_cast<Element>(a))), row});
            }
            return o;
        };
    });

    // apply / compose
    Rank op_n = 0;
    std::uint64_t op_a = 0, op_b = 0;
    for (const char* name : {"apply", "compose"}) {
        auto* cmd = sub(name, name == std::string("apply") ? "a * b in A_n" : "a o b = (a * (b+1)) - 1 in A_n");
        add_rank(cmd, op_n);
        cmd->add_option("--a", op_a)->required();
        cmd->add_option("--b", op_b)->required();
        cmd->final_callback([&, name] {
            handler = [&, name] {
                Output o;
                o.args = {{"n", op_n}, {"a", op_a}, {"b", op_b}};
                const LaverTable t = store::load_or_build(op_n, cache_options(g));
                o.max_table_rank = op_n;
                if (op_a >= t.size()) throw UsageError("--a must be below 2^n");
                Element v;
                if (std::string(name) == "apply") {
                    v = t.apply(static_cast<Element>(op_a), op_b);
                } else {
                    if (op_b >= t.size()) throw UsageError("--b must be below 2^n");
                    v = t.compose(static_cast<Element>(op_a), static_cast<Element>(op_b));
                }
                o.result = {{"value", v}};
                o.text = std::to_string(v) + "\n";
                o.csv = "n,a,b,value\n" + csv_line({std::to_string(op_n), std::to_string(op_a), std::to_string(op_b),
                                                    std::to_string(v)});
                return o;
            };
        });
    }

    // period / threshold
    for (const char* name : {"period", "threshold"}) {
        auto* cmd = sub(name, name == std::string("period") ? "p_n(a)" : "t_n(a)");
        add_rank(cmd, op_n);
        cmd->add_option("--a", op_a)->required();
        cmd->final_callback([&, name] {
            handler = [&, name] {
                Output o;
                o.args = {{"n", op_n}, {"a", op_a}};
                const LaverTable t = store::load_or_build(op_n, cache_options(g));
                o.max_table_rank = op_n;
                if (op_a >= t.size()) throw UsageError("--a must be below 2^n");
                const auto e = static_cast<Element>(op_a);
                const std::uint64_t v = std::string(name) == "period" ? t.period(e) : t.threshold(e);
                o.result = {{"value", v}};
                o.text = std::to_string(v) + "\n";
                o.csv = "n,a,value\n" + csv_line({std::to_string(op_n), std::to_string(op_a), std::to_string(v)});
                return o;
            };
        });
    }

    // eval
    std::string word_text;
    auto* eval = sub("eval", "evaluate a word in A_n ('1' is the generator, '*' left associative)");
    add_rank(eval, op_n);
    eval->add_option("--word", word_text)->required();
    eval->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"n", op_n}, {"word", word_text}};
            const Word w = Word::parse(word_text);
            const LaverTable t = store::load_or_build(op_n, cache_options(g));
            o.max_table_rank = op_n;
            const Element v = w.evaluate(t);
            o.result = {{"value", v}, {"word", w.to_string()}};
            o.text = std::to_string(v) + "\n";
            o.csv = "n,word,value\n" + csv_line({std::to_string(op_n), "\"" + w.to_string() + "\"", std::to_string(v)});
            return o;
        };
    });

    // crit
    std::uint64_t crit_a = 0;
    Rank bound = 0;
    auto* crit_cmd = sub("crit", "critical point index of an integer or a word");
    auto* crit_a_opt = crit_cmd->add_option("--a", crit_a, "positive integer");
    auto* crit_w_opt = crit_cmd->add_option("--word", word_text, "word expression");
    crit_a_opt->excludes(crit_w_opt);
    crit_cmd->add_option("--bound", bound, "largest table rank for words")->check(CLI::Range(0u, kMaxRank - 1));
    crit_cmd->final_callback([&] {
        handler = [&] {
            Output o;
            CertifiedIndex r;
            if (!word_text.empty()) {
                const Word w = Word::parse(word_text);
                o.args = {{"word", word_text}, {"bound", bound}};
                r = crit(w, tower_through(bound, g), bound);
                o.max_table_rank = bound;
            } else {
                if (crit_a == 0) throw UsageError("crit needs --a >= 1 or --word");
                o.args = {{"a", crit_a}};
                r = crit(crit_a);
            }
            o.result = certified_json(r);
            o.text = certified_text(r) + "\n";
            o.csv = "value,certified,bound\n" + csv_line({std::to_string(r.value.idx), r.certified ? "true" : "false",
                                                          std::to_string(r.bound)});
            return o;
        };
    });

    // act
    Rank act_k = 0;
    auto* act = sub("act", "a . gamma_k as a critical point index");
    act->add_option("--a", op_a)->required();
    act->add_option("--k", act_k)->required();
    act->add_option("--bound", bound, "largest table rank")->required()->check(CLI::Range(0u, kMaxRank - 1));
    act->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"a", op_a}, {"k", act_k}, {"bound", bound}};
            const auto r = act_on_gamma(op_a, GammaIndex{act_k}, tower_through(bound, g), bound);
            o.max_table_rank = bound;
            o.result = certified_json(r);
            o.text = certified_text(r) + "\n";
            o.csv = "a,k,value,certified\n" + csv_line({std::to_string(op_a), std::to_string(act_k),
                                                        std::to_string(r.value.idx), r.certified ? "true" : "false"});
            return o;
        };
    });

    // range
    Rank gamma = 0;
    auto* range = sub("range", "is gamma_G in the range of a");
    range->add_option("--a", op_a)->required();
    range->add_option("--gamma", gamma)->required()->check(CLI::Range(0u, kMaxRank - 2));
    range->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"a", op_a}, {"gamma", gamma}};
            const auto tower = tower_through(gamma + 1, g);
            o.max_table_rank = gamma + 1;
            const bool v = in_range(op_a, GammaIndex{gamma}, tower);
            o.result = {{"value", v}};
            if (v) o.result["k"] = preimage_index(op_a, GammaIndex{gamma}, tower).idx;
            o.text = std::string(v ? "true" : "false") + "\n";
            o.csv = "a,gamma,value\n" + csv_line({std::to_string(op_a), std::to_string(gamma), v ? "true" : "false"});
            return o;
        };
    });

    // witness
    auto* witness = sub("witness", "least c with gamma_k in range(c)");
    witness->add_option("--k", act_k)->required()->check(CLI::Range(1u, kMaxRank - 2));
    witness->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"k", act_k}};
            const auto c = least_range_witness(GammaIndex{act_k}, tower_through(act_k + 1, g));
            o.max_table_rank = act_k + 1;
            o.result = {{"value", c}};
            o.text = std::to_string(c) + "\n";
            o.csv = "k,value\n" + csv_line({std::to_string(act_k), std::to_string(c)});
            return o;
        };
    });

    // verify
    std::string check_text;
    Rank verify_n = 1;
    bool upto = false, full_range = false, drop_hypothesis = false;
    auto* verify_cmd = sub("verify", "sweep a conjecture or lemma over A_n");
    std::vector<std::string> names;
    for (Check c : all_checks()) names.emplace_back(check_name(c));
    verify_cmd->add_option("check", check_text, "which statement")->required()->check(CLI::IsMember(names));
    add_rank(verify_cmd, verify_n);
    verify_cmd->add_flag("--upto", upto, "every applicable rank up to n");
    verify_cmd->add_flag("--full-range", full_range, "WTH1-3 over a < 2^n - 1 instead of a < 2^{n-1}");
    verify_cmd->add_flag("--drop-hypothesis", drop_hypothesis, "WTH1-3 without gamma_n in range(a)");
    verify_cmd->final_callback([&] {
        handler = [&] {
            Output o;
            const Check check = *parse_check(check_text);
            o.args = {{"check", check_text}, {"n", verify_n}, {"upto", upto}, {"full_range", full_range}};
            if (drop_hypothesis) o.args["drop_hypothesis"] = true;
            std::vector<Rank> ranks;
            const Rank first = upto ? min_rank(check) : verify_n;
            for (Rank n = first; n <= verify_n; ++n) {
                const int parity = rank_parity(check);
                if ((parity == 1 && n % 2 == 0) || (parity == 2 && n % 2 == 1)) continue;
                ranks.push_back(n);
            }
            if (ranks.empty()) throw UsageError(check_text + " has no applicable rank <= " + std::to_string(verify_n));
            const Rank top = required_rank(check, ranks.back());
            const auto tower = tower_through(top, g);
            o.max_table_rank = top;
            SweepOptions options;
            options.workers = g.workers;
            options.max_reported = g.max_reported;
            options.exhaustive = g.exhaustive;
            options.full_range = full_range;
            options.drop_range_hypothesis = drop_hypothesis;
            json reports = json::array();
            o.csv = "check,n,status,elements_checked,qualifying,violations,undecided\n";
            for (Rank n : ranks) {
                const auto r = verify(check, n, tower, options);
                reports.push_back(report_json(r, tower, options, g.timing));
                o.text += report_text(r, tower, options);
                o.csv += csv_line({std::string(check_name(check)), std::to_string(n), std::string(status_name(r.status)),
                                   std::to_string(r.elements_checked), std::to_string(r.qualifying),
                                   std::to_string(r.violations), std::to_string(r.undecided)});
                if (r.status == Status::counterexample) {
                    o.exit_code = kExitCounterexample;
                } else if (r.status == Status::resource_limited && o.exit_code == kExitOk) {
                    o.exit_code = kExitError;
                }
            }
            o.result = {{"reports", reports}};
            return o;
        };
    });

    // enumerate
    Rank below = 1;
    auto* enumerate = sub("enumerate", "list the ordinals below gamma_N");
    enumerate->add_option("--below", below, "N")->required()->check(CLI::Range(1u, kMaxRank - 2));
    enumerate->final_callback([&] {
        handler = [&] {
            Output o;
            o.args = {{"below", below}};
            const auto tower = tower_through(below + 1, g);
            o.max_table_rank = below + 1;
            const auto ordinals = enumerate_below(below, tower, g.workers);
            o.text = render_text(ordinals);
            o.result = {{"below", below}, {"count", ordinals.size()}, {"ordinals", render_json(ordinals)}};
            o.csv = "index,kind,coef,gamma,interval\n";
            for (std::size_t i = 0; i < ordinals.size(); ++i) {
                if (const auto* cp = std::get_if<CritPoint>(&ordinals[i])) {
                    o.csv += csv_line({std::to_string(i), "crit", "", std::to_string(cp->gamma.idx), ""});
                } else {
                    const auto& p = std::get<PairRep>(ordinals[i]);
                    o.csv += csv_line({std::to_string(i), "pair", std::to_string(p.coef), std::to_string(p.cof.idx),
                                       std::to_string(p.interval)});
                }
            }
            return o;
        };
    });

    // selftest
    auto* selftest = sub("selftest", "run the built-in regression vectors");
    selftest->final_callback([&] {
        handler = [&] {
            Output o;
            const auto started = std::chrono::steady_clock::now();
            const auto results = selftest_vectors(TableTower::build(10));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            o.max_table_rank = 10;
            json list = json::array();
            o.csv = "vector,passed\n";
            bool all = true;
            for (const auto& [name, ok] : results) {
                all = all && ok;
                list.push_back({{"name", name}, {"passed", ok}});
                o.text += std::string(ok ? "PASS  " : "FAIL  ") + name + "\n";
                o.csv += csv_line({"\"" + name + "\"", ok ? "true" : "false"});
            }
            o.result = {{"vectors", list}, {"passed", all}};
            if (g.timing) o.result["seconds"] = secs;
            o.exit_code = all ? kExitOk : kExitError;
            return o;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }
    if (const auto used = app.get_subcommands(); !used.empty()) command_name = used.front()->get_name();
    if (!handler) {
        err << "error: no command given\n";
        return kExitError;
    }

    try {
        Output o = handler();
        if (g.format == "json") {
            json config = {{"cache", !g.no_cache}, {"max_table_rank", o.max_table_rank}};
            if (!g.no_cache) config["cache_dir"] = g.cache_dir;
            json doc = {{"command", command_name}, {"args", o.args}, {"config", config}, {"result", o.result}};
            if (g.timing) doc["run"] = {{"workers", g.workers}};
            out << doc.dump(2) << "\n";
        } else if (g.format == "csv") {
            out << o.csv;
        } else {
            out << o.text;
        }
        return o.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace laver::cli
