// chainlab: exact k-chain counting in families of subsets of [n], with the
// associated lower bounds, extremal constructions, shifting local search,
// and brute-force verification at small n.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chainlab/bounds.hpp"
#include "chainlab/chains.hpp"
#include "chainlab/extremal.hpp"
#include "chainlab/json_io.hpp"
#include "chainlab/oracle.hpp"
#include "chainlab/set_family.hpp"
#include "chainlab/shift.hpp"

namespace {

using namespace chainlab;

enum class Format { json, csv, text };

Format parse_format(const std::string& f) {
    if (f == "json") return Format::json;
    if (f == "csv") return Format::csv;
    if (f == "text") return Format::text;
    throw CLI::ValidationError("--format must be json, csv, or text");
}

SetFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    try {
        return read_family(in);
    } catch (const FamilyParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("CHAINLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Fixed-column table for bound and oracle reports.  Rows appear in input
// order; output is byte-stable for a fixed input.
const char* kCsvHeader = "name,n,k,s,t,t1,t2,value_fraction,value_decimal,regime_ok\n";

std::string csv_row(const BoundReport& r) {
    const auto opt = [](const std::optional<long long>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    std::string row = r.name + "," + std::to_string(r.params.n) + "," +
                      (r.params.k != 0 ? std::to_string(r.params.k) : std::string()) + "," +
                      opt(r.params.s) + "," + opt(r.params.t) + "," + opt(r.params.t1) + "," +
                      opt(r.params.t2) + "," + fraction_string(r.value) + "," +
                      decimal_string(r.value) + "," + (r.regime_ok ? "true" : "false");
    return row + "\n";
}

std::string csv_row(const OracleResult& r) {
    std::string row = "oracle," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
                      std::to_string(r.s) + ",,,," + r.minimum.str() + "," + r.minimum.str() +
                      "," + (r.complete ? "true" : "false");
    return row + "\n";
}

template <typename Report>
std::string emit_table(const std::vector<Report>& reports, Format format) {
    if (format == Format::csv) {
        std::string out = kCsvHeader;
        for (const auto& r : reports) out += csv_row(r);
        return out;
    }
    if (format == Format::json) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (const auto& r : reports) {
        if constexpr (std::is_same_v<Report, BoundReport>) {
            out += reports.size() == 1 ? decimal_string(r.value)
                                       : r.name + " " + decimal_string(r.value);
        } else {
            out += "oracle n=" + std::to_string(r.n) + " s=" + std::to_string(r.s) +
                   " k=" + std::to_string(r.k) + " minimum=" + r.minimum.str() +
                   (r.complete ? "" : " (incomplete)");
        }
        out += "\n";
    }
    return out;
}

struct BoundArgs {
    std::string name;
    int n = 0, k = 2;
    long long t = 0, t1 = 0, t2 = 0;
    std::string family_path;
};

std::vector<BoundReport> evaluate_bound(const BoundArgs& a) {
    BoundParams p;
    p.n = a.n;
    p.k = a.k;
    if (a.name == "erdos_katona") {
        p.k = 2;
        p.t = a.t;
        return {{a.name, Ratio(erdos_katona_lower(a.n, a.t)), p, true}};
    }
    if (a.name == "thm13") {
        p.t = a.t;
        return {{a.name, Ratio(thm13_lower(a.n, a.k, a.t)), p, true}};
    }
    if (a.name == "thm32") {
        if (a.family_path.empty())
            throw CLI::ValidationError("bound thm32 requires --family");
        const SetFamily fam = load_family(a.family_path);
        p.n = fam.n();
        p.s = fam.size();
        p.r = middle_band_r(fam.n(), a.k);
        return {{a.name, thm32_lower(fam, a.k), p, true}};
    }
    if (a.name == "stability") {
        p.t = a.t;
        p.r = middle_band_r(a.n, a.k);
        const auto [g1, g2] = stability_gains(a.n, a.k, a.t);
        return {{"stability_gain1", g1, p, true}, {"stability_gain2", g2, p, true}};
    }
    if (a.name == "prop41") {
        p.t1 = a.t1;
        p.t2 = a.t2;
        p.a = middle_a(a.n, a.k);
        return {{a.name, prop41_lower(a.n, a.k, a.t1, a.t2), p, true}};
    }
    if (a.name == "thm42") {
        p.t1 = a.t1;
        p.t2 = a.t2;
        p.a = middle_a(a.n, a.k);
        return {{a.name, thm42_lower(a.n, a.k, a.t1, a.t2), p, true}};
    }
    if (a.name == "thm14") {
        p.t = a.t;
        p.a = middle_a(a.n, a.k);
        const RegimeBound b = thm14_lower(a.n, a.k, a.t);
        return {{a.name, b.value, p, b.regime_ok}};
    }
    if (a.name == "prop43") {
        p.a = middle_a(a.n, a.k);
        return {{a.name, Ratio(prop43_min_missing(a.n, a.k)), p, true}};
    }
    if (a.name == "middle_sum") {
        return {{a.name, Ratio(middle_sum(a.n, a.k)), p, true}};
    }
    throw CLI::ValidationError(
        "unknown bound name (expected erdos_katona, thm13, thm32, stability, prop41, "
        "thm42, thm14, prop43, or middle_sum)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact k-chain counting, bounds, and verification for subset families"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "text";
    app.add_option("--format", format_name, "output format: json, csv, or text")
        ->capture_default_str();
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: CHAINLAB_THREADS or hardware)");
    long long seed = 0;
    app.add_option("--seed", seed, "seed for randomized corpora (reserved)");

    // count
    auto* count_cmd = app.add_subcommand("count", "count k-chains in a family file");
    std::string count_family;
    int count_k = 2;
    count_cmd->add_option("--family", count_family, "family file")->required();
    count_cmd->add_option("--k", count_k, "chain length")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "evaluate a named lower bound");
    BoundArgs bound_args;
    bound_cmd->add_option("--name", bound_args.name, "bound name")->required();
    bound_cmd->add_option("--n", bound_args.n, "ground-set size");
    bound_cmd->add_option("--k", bound_args.k, "chain length");
    bound_cmd->add_option("--t", bound_args.t, "excess size t (or ell for stability)");
    bound_cmd->add_option("--t1", bound_args.t1, "excess size t1");
    bound_cmd->add_option("--t2", bound_args.t2, "missing middle sets t2");
    bound_cmd->add_option("--family", bound_args.family_path, "family file (thm32)");

    // construct
    auto* construct_cmd = app.add_subcommand("construct", "emit a constructed family");
    int construct_n = 0;
    long long construct_s = -1;
    bool construct_saturated = false, construct_hex = false;
    construct_cmd->add_option("--n", construct_n, "ground-set size")->required();
    construct_cmd->add_option("--s", construct_s, "family size (centered construction)");
    construct_cmd->add_flag("--saturated", construct_saturated,
                            "emit the saturated family (n = 2m+1 must be odd)");
    construct_cmd->add_flag("--hex", construct_hex, "emit hex bitmask lines");

    // check
    auto* check_cmd = app.add_subcommand("check", "certify 2-chain extremality");
    std::string check_family;
    check_cmd->add_option("--family", check_family, "family file")->required();

    // minimize
    auto* minimize_cmd = app.add_subcommand("minimize", "shifting local search");
    std::string minimize_family;
    int minimize_k = 2, minimize_max_steps = 1000;
    minimize_cmd->add_option("--family", minimize_family, "family file")->required();
    minimize_cmd->add_option("--k", minimize_k, "chain length")->required();
    minimize_cmd->add_option("--max-steps", minimize_max_steps, "accepted-step cap")
        ->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "brute-force verification at n <= 4");
    int verify_n = 0, verify_k = 2;
    long long verify_s_min = 0, verify_s_max = -1;
    bool verify_iff = false;
    verify_cmd->add_option("--n", verify_n, "ground-set size")->required();
    verify_cmd->add_option("--k", verify_k, "chain length (conjecture mode)");
    verify_cmd->add_option("--s-min", verify_s_min, "smallest family size");
    verify_cmd->add_option("--s-max", verify_s_max, "largest family size");
    verify_cmd->add_flag("--iff", verify_iff, "check the 2-chain extremal characterization");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "permutation-counting inequality audit");
    std::string audit_family;
    int audit_k = 2;
    audit_cmd->add_option("--family", audit_family, "family file")->required();
    audit_cmd->add_option("--k", audit_k, "chain length")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        const Format format = parse_format(format_name);

        if (count_cmd->parsed()) {
            const SetFamily fam = load_family(count_family);
            const ChainCountReport rep = owner_counts(fam, count_k);
            if (format == Format::json) {
                std::cout << to_json(rep).dump(2) << "\n";
            } else if (format == Format::csv) {
                std::cout << "key,value\n"
                          << "total," << rep.total.str() << "\n"
                          << "c1," << rep.c1.str() << "\n"
                          << "c2," << rep.c2.str() << "\n";
            } else {
                std::cout << "total " << rep.total.str() << "\n"
                          << "c1 " << rep.c1.str() << "\n"
                          << "c2 " << rep.c2.str() << "\n";
            }
            return 0;
        }

        if (bound_cmd->parsed()) {
            std::cout << emit_table(evaluate_bound(bound_args), format);
            return 0;
        }

        if (construct_cmd->parsed()) {
            SetFamily fam(1);
            if (construct_saturated) {
                if (construct_n % 2 == 0 || construct_n < 3) {
                    throw std::invalid_argument("--saturated needs odd n >= 3");
                }
                fam = saturated_example((construct_n - 1) / 2);
            } else {
                if (construct_s < 0) {
                    throw std::invalid_argument("construct needs --s (or --saturated)");
                }
                fam = canonical_family(construct_n, construct_s);
            }
            write_family(std::cout, fam, construct_hex);
            return 0;
        }

        if (check_cmd->parsed()) {
            const SetFamily fam = load_family(check_family);
            const ExtremalCertificate cert = check_extremal_2chain(fam);
            if (format == Format::text) {
                std::cout << (cert.satisfied ? "satisfied" : "not satisfied")
                          << " r=" << cert.r.str();
                for (int i = 0; i < 4; ++i) {
                    std::cout << " cond" << i + 1 << "="
                              << (cert.condition_results[static_cast<std::size_t>(i)] ? "T" : "F");
                }
                std::cout << "\n";
                for (ElementSet s : cert.violating_sets) {
                    std::cout << "violates: " << set_to_string(s) << "\n";
                }
            } else {
                std::cout << to_json(cert).dump(2) << "\n";
            }
            return 0;
        }

        if (minimize_cmd->parsed()) {
            const SetFamily fam = load_family(minimize_family);
            const auto [result, trace] = minimize(fam, minimize_k, minimize_max_steps);
            if (format == Format::text) {
                std::cout << "initial " << trace.initial_count.str() << "\n"
                          << "final " << trace.final_count.str() << "\n"
                          << "steps " << trace.steps.size() << "\n";
            } else {
                Json j;
                j["trace"] = to_json(trace);
                j["final_family"] = to_json(result.members());
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (verify_s_max < 0) verify_s_max = 1LL << verify_n;
            if (verify_iff) {
                bool all_ok = true;
                Json arr = Json::array();
                const Bigint sperner = sperner_bound(verify_n);
                for (long long s = std::max<long long>(verify_s_min,
                                                       static_cast<long long>(sperner));
                     s <= verify_s_max; ++s) {
                    const IffReport rep = verify_iff_characterization(verify_n, s);
                    all_ok = all_ok && rep.ok;
                    if (format == Format::json) {
                        arr.push_back(to_json(rep));
                    } else {
                        std::cout << "s=" << s << " optima=" << rep.optima_total
                                  << " certified=" << rep.certified_total << " "
                                  << (rep.ok ? "ok" : "MISMATCH") << "\n";
                        for (const SetFamily& f : rep.optimal_not_certified) {
                            std::cout << "optimal but not certified:\n" << family_to_string(f);
                        }
                        for (const SetFamily& f : rep.certified_not_optimal) {
                            std::cout << "certified but not optimal:\n" << family_to_string(f);
                        }
                    }
                }
                if (format == Format::json) std::cout << arr.dump(2) << "\n";
                return all_ok ? 0 : 2;
            }
            const ConjectureReport rep = verify_conjecture(verify_n, verify_k, verify_s_min,
                                                           verify_s_max,
                                                           resolve_threads(threads));
            if (format == Format::csv) {
                std::vector<OracleResult> rows;
                for (const auto& row : rep.rows) {
                    OracleResult o;
                    o.n = verify_n;
                    o.s = row.s;
                    o.k = verify_k;
                    o.minimum = row.oracle_min;
                    o.complete = true;
                    rows.push_back(std::move(o));
                }
                std::cout << emit_table(rows, format);
            } else if (format == Format::json) {
                std::cout << to_json(rep).dump(2) << "\n";
            } else {
                for (const auto& row : rep.rows) {
                    std::cout << "s=" << row.s << " oracle=" << row.oracle_min.str()
                              << " construction=" << row.conjectured.str() << " "
                              << (row.equal ? "ok" : "COUNTEREXAMPLE") << "\n";
                }
                if (rep.counterexample) {
                    std::cout << "counterexample family:\n"
                              << family_to_string(*rep.counterexample);
                }
            }
            return rep.ok ? 0 : 2;
        }

        if (audit_cmd->parsed()) {
            const SetFamily fam = load_family(audit_family);
            const LymAudit a = lym_audit(fam, audit_k);
            if (format == Format::text) {
                for (const auto& q : a.inequalities) {
                    std::cout << q.name << " margin " << q.margin.str() << " "
                              << (q.holds ? "ok" : "VIOLATED") << "\n";
                }
                if (a.perm_enumerated) {
                    std::cout << "perm_prefix_total " << a.perm_prefix_total.str() << "\n";
                }
            } else {
                std::cout << to_json(a).dump(2) << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
