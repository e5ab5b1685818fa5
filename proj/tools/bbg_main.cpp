// bbg: sampling, spectra sweeps, and verification suites for bipartite
// biregular graphs. Reports are deterministic for a fixed command line and
// seed: JSON (schema bbg-report/1) plus optional CSV and plot data.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bbg/concentration.hpp"
#include "bbg/coupling.hpp"
#include "bbg/discrepancy.hpp"
#include "bbg/enumerate.hpp"
#include "bbg/errors.hpp"
#include "bbg/parallel.hpp"
#include "bbg/sampler.hpp"
#include "bbg/spectra.hpp"
#include "bbg/stats.hpp"
#include "bbg/switching.hpp"

using json = nlohmann::ordered_json;
using namespace bbg;

namespace {

constexpr const char* kSchema = "bbg-report/1";
constexpr const char* kVersion = "0.1.0";

struct Options {
    std::vector<DegreeParams> grid;
    long long trials = 20;
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string csv;
    bool plot_data = false;
    std::string statistic = "sigma2";
    double alpha = 0;  // 0 picks the per-command default
    long long q_count = 10;
};

struct CommandResult {
    json report;
    std::vector<std::string> csv_rows;  // without header
    std::string csv_header;
    std::vector<std::pair<double, double>> plot;  // two-column plot data
    bool pass = true;
};

std::vector<DegreeParams> parse_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open grid file " + path);
    std::vector<DegreeParams> grid;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream row(line);
        DegreeParams p{};
        if (row >> p.n >> p.m >> p.d1 >> p.d2) grid.push_back(p);
    }
    return grid;
}

json params_json(const DegreeParams& p) {
    return json{{"n", p.n}, {"m", p.m}, {"d1", p.d1}, {"d2", p.d2}};
}

std::string params_csv(const DegreeParams& p) {
    return std::to_string(p.n) + "," + std::to_string(p.m) + "," + std::to_string(p.d1) +
           "," + std::to_string(p.d2);
}

std::string params_str(const DegreeParams& p) {
    return "(" + std::to_string(p.n) + "," + std::to_string(p.m) + "," +
           std::to_string(p.d1) + "," + std::to_string(p.d2) + ")";
}

// FNV-1a over the row masks; a stable fingerprint for sampled graphs.
std::string fingerprint(const BiregularGraph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int u = 0; u < g.params().n; ++u)
        for (int v : g.row_neighbors(u)) {
            h ^= static_cast<std::uint64_t>(v) + 1;
            h *= 1099511628211ULL;
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

BiregularGraph draw(const DegreeParams& p, std::uint64_t seed, long long point,
                    long long trial) {
    ChainConfig cfg;
    cfg.rng_seed = seed;
    cfg.rng_stream = (static_cast<std::uint64_t>(point) << 32) ^
                     static_cast<std::uint64_t>(trial);
    return sample_uniform(p, cfg);
}

// ---- commands ------------------------------------------------------------

CommandResult cmd_enumerate(const Options& opt) {
    CommandResult r;
    r.csv_header = "n,m,d1,d2,count,single_ratio,pair_ratio,ok";
    for (const DegreeParams& p : opt.grid) {
        GraphFamily fam = enumerate_family(p);
        const Rational single = family_ratio(p, EdgeConstraint{{{0, 0}}, {}});
        const Rational pair =
            p.n >= 2 ? family_ratio(p, EdgeConstraint{{{0, 0}, {1, 0}}, {}}) : Rational(0);
        const bool ok =
            single == Rational(p.d2, p.n) &&
            pair == Rational(static_cast<long long>(p.d2) * (p.d2 - 1),
                             static_cast<long long>(p.n) * std::max(p.n - 1, 1));
        r.pass = r.pass && ok;
        r.report.push_back(json{{"params", params_json(p)},
                                {"count", fam.size()},
                                {"single_ratio", to_string(single)},
                                {"pair_ratio", to_string(pair)},
                                {"ok", ok}});
        r.csv_rows.push_back(params_csv(p) + "," + std::to_string(fam.size()) + "," +
                             to_string(single) + "," + to_string(pair) + "," +
                             (ok ? "1" : "0"));
        r.plot.emplace_back(static_cast<double>(p.n), static_cast<double>(fam.size()));
    }
    return r;
}

CommandResult cmd_sample(const Options& opt) {
    CommandResult r;
    r.csv_header = "n,m,d1,d2,trial,fingerprint";
    long long point = 0;
    for (const DegreeParams& p : opt.grid) {
        json trials = json::array();
        std::vector<std::string> prints(static_cast<std::size_t>(opt.trials));
        parallel_for(opt.trials, [&](long long t) {
            prints[static_cast<std::size_t>(t)] = fingerprint(draw(p, opt.seed, point, t));
        });
        for (long long t = 0; t < opt.trials; ++t) {
            trials.push_back(prints[static_cast<std::size_t>(t)]);
            r.csv_rows.push_back(params_csv(p) + "," + std::to_string(t) + "," +
                                 prints[static_cast<std::size_t>(t)]);
        }
        r.report.push_back(json{{"params", params_json(p)},
                                {"burn_in", default_burn_in(p)},
                                {"fingerprints", trials}});
        ++point;
    }
    return r;
}

CommandResult cmd_spectra(const Options& opt) {
    CommandResult r;
    r.csv_header = "n,m,d1,d2,trial,sigma1,sigma2,lambda_m";
    long long point = 0;
    for (const DegreeParams& p : opt.grid) {
        struct Row {
            double s1, s2, lm;
        };
        std::vector<Row> rows(static_cast<std::size_t>(opt.trials));
        parallel_for(opt.trials, [&](long long t) {
            BiregularGraph g = draw(p, opt.seed, point, t);
            SpectralSummary s = spectral_summary(g);
            rows[static_cast<std::size_t>(t)] = {s.sigma[0],
                                                 p.n > 1 ? s.sigma[1] : 0.0, s.lambda_M};
        });
        json trials = json::array();
        const double sigma1_expected = std::sqrt(static_cast<double>(p.d1) * p.d2);
        for (long long t = 0; t < opt.trials; ++t) {
            const Row& row = rows[static_cast<std::size_t>(t)];
            if (std::abs(row.s1 - sigma1_expected) > 1e-8) r.pass = false;
            trials.push_back(json{{"sigma1", row.s1},
                                  {"sigma2", row.s2},
                                  {"lambda_m", row.lm}});
            r.csv_rows.push_back(params_csv(p) + "," + std::to_string(t) + "," +
                                 std::to_string(row.s1) + "," + std::to_string(row.s2) +
                                 "," + std::to_string(row.lm));
            r.plot.emplace_back(static_cast<double>(t), row.s2);
        }
        r.report.push_back(json{{"params", params_json(p)}, {"trials", trials}});
        ++point;
    }
    return r;
}

CommandResult cmd_sweep(const Options& opt) {
    const bool use_lambda_m = opt.statistic == "lambda-m";
    const double alpha = opt.alpha > 0 ? opt.alpha : (use_lambda_m ? 4.0 : 3.0);
    CommandResult r;
    r.csv_header = "n,m,d1,d2,statistic,max_ratio,mean_ratio,floor,alpha,ok";
    long long point = 0;
    for (const DegreeParams& p : opt.grid) {
        std::vector<double> ratios(static_cast<std::size_t>(opt.trials));
        const double root_d1 = std::sqrt(static_cast<double>(p.d1));
        parallel_for(opt.trials, [&](long long t) {
            BiregularGraph g = draw(p, opt.seed, point, t);
            const double value = use_lambda_m ? lambda_M(g, 1e-10) : sigma2_deflated(g, 1e-10);
            ratios[static_cast<std::size_t>(t)] = value / root_d1;
        });
        double max_r = 0, mean_r = 0;
        for (double x : ratios) {
            max_r = std::max(max_r, x);
            mean_r += x;
        }
        mean_r /= std::max<long long>(opt.trials, 1);
        // Alon-Boppana floor for the second singular value; complete
        // bipartite instances sit at 0 and are exempt.
        const double floor_v =
            (std::sqrt(p.d1 - 1.0) + std::sqrt(p.d2 - 1.0)) / root_d1 - 0.2;
        bool ok = max_r <= alpha;
        if (!use_lambda_m && p.d1 < p.m && opt.trials > 0) ok = ok && max_r >= floor_v;
        r.pass = r.pass && ok;
        r.report.push_back(json{{"params", params_json(p)},
                                {"statistic", use_lambda_m ? "lambda_m" : "sigma2"},
                                {"ratios", ratios},
                                {"max_ratio", max_r},
                                {"mean_ratio", mean_r},
                                {"alon_boppana_floor", floor_v},
                                {"alpha", alpha},
                                {"ok", ok}});
        r.csv_rows.push_back(params_csv(p) + "," +
                             (use_lambda_m ? "lambda_m" : "sigma2") + "," +
                             std::to_string(max_r) + "," + std::to_string(mean_r) + "," +
                             std::to_string(floor_v) + "," + std::to_string(alpha) + "," +
                             (ok ? "1" : "0"));
        r.plot.emplace_back(static_cast<double>(p.n), max_r);
        ++point;
    }
    return r;
}

CommandResult cmd_digraph(const Options& opt) {
    const double alpha = opt.alpha > 0 ? opt.alpha : 3.0;
    CommandResult r;
    r.csv_header = "n,m,d1,d2,trial,sigma2,lambda2_abs,ok";
    long long point = 0;
    for (const DegreeParams& p : opt.grid) {
        if (p.n != p.m || p.d1 != p.d2)
            throw NonSquareParams("digraph needs n == m and d1 == d2");
        std::vector<DigraphSigma> rows(static_cast<std::size_t>(opt.trials));
        parallel_for(opt.trials, [&](long long t) {
            rows[static_cast<std::size_t>(t)] = digraph_sigma2(draw(p, opt.seed, point, t));
        });
        json trials = json::array();
        for (long long t = 0; t < opt.trials; ++t) {
            const DigraphSigma& ds = rows[static_cast<std::size_t>(t)];
            const bool ok = ds.lambda2_abs <= ds.sigma2 + 1e-8 &&
                            ds.sigma2 <= alpha * std::sqrt(static_cast<double>(p.d1));
            r.pass = r.pass && ok;
            trials.push_back(json{{"sigma2", ds.sigma2},
                                  {"lambda2_abs", ds.lambda2_abs},
                                  {"ok", ok}});
            r.csv_rows.push_back(params_csv(p) + "," + std::to_string(t) + "," +
                                 std::to_string(ds.sigma2) + "," +
                                 std::to_string(ds.lambda2_abs) + "," + (ok ? "1" : "0"));
            r.plot.emplace_back(static_cast<double>(t), ds.sigma2);
        }
        r.report.push_back(json{{"params", params_json(p)}, {"trials", trials}});
        ++point;
    }
    return r;
}

json verify_switchings_point(const DegreeParams& p) {
    GraphFamily fam = enumerate_family(p);
    long long checks = 0, violations = 0;
    for (long long i = 0; i < fam.size(); ++i) {
        BiregularGraph g = fam.member(i);
        for (int u = 0; u < p.n; ++u)
            for (int v = 0; v < p.m; ++v) {
                SwitchingCount c = count_switchings(
                    g, Anchor{u, -1, v},
                    g.has_edge(u, v) ? SwitchingKind::Backward : SwitchingKind::Forward);
                ++checks;
                if (c.value < c.lower_bound || c.value > c.upper_bound) ++violations;
            }
        for (int u1 = 0; u1 < p.n; ++u1)
            for (int u2 = 0; u2 < p.n; ++u2) {
                if (u1 == u2) continue;
                for (int v = 0; v < p.m; ++v) {
                    const bool e1 = g.has_edge(u1, v), e2 = g.has_edge(u2, v);
                    std::vector<SwitchingKind> kinds;
                    if (e1 && e2)
                        kinds = {SwitchingKind::Type1Bwd, SwitchingKind::Type2Bwd,
                                 SwitchingKind::Type3Bwd};
                    else if (e1)
                        kinds = {SwitchingKind::Type1Fwd};
                    else if (e2)
                        kinds = {SwitchingKind::Type2Fwd};
                    else
                        kinds = {SwitchingKind::Type3Fwd};
                    for (SwitchingKind k : kinds) {
                        SwitchingCount c = count_switchings(g, Anchor{u1, u2, v}, k);
                        ++checks;
                        if (c.value < c.lower_bound || c.value > c.upper_bound) ++violations;
                    }
                }
            }
    }
    return json{{"members", fam.size()},
                {"checks", checks},
                {"violations", violations},
                {"ok", violations == 0}};
}

json verify_meta_point(const DegreeParams& p, bool pair_mode) {
    MetaGraph g0 = build_meta_graph(p, pair_mode ? Anchor{0, 1, 0} : Anchor{0, -1, 0},
                                    pair_mode);
    const long long lt = g0.left_target_degree();
    const long long rt = g0.right_target_degree();
    bool ok = g0.left_family().size() * lt == g0.right_family().size() * rt;
    for (long long d : g0.left_degrees()) ok = ok && d <= lt;
    for (long long d : g0.right_degrees()) ok = ok && d <= rt;
    MetaGraph done = complete_meta_graph(g0);
    for (long long d : done.left_degrees()) ok = ok && d == lt;
    for (long long d : done.right_degrees()) ok = ok && d == rt;
    return json{{"mode", pair_mode ? "pair" : "single"},
                {"left_target", lt},
                {"right_target", rt},
                {"edges", static_cast<long long>(done.edges().size())},
                {"ok", ok}};
}

json verify_coupling_point(const DegreeParams& p, bool pair_mode, long long trials,
                           std::uint64_t seed) {
    MetaGraph done = complete_meta_graph(
        build_meta_graph(p, pair_mode ? Anchor{0, 1, 0} : Anchor{0, -1, 0}, pair_mode));
    Rng rng = make_rng(seed, pair_mode ? 2 : 1);
    std::uniform_int_distribution<long long> src(0, done.left_family().size() - 1);
    std::vector<long long> counts(static_cast<std::size_t>(done.right_family().size()), 0);
    long long in_b = 0;
    for (long long i = 0; i < trials; ++i) {
        CoupledStepOutcome out = coupled_step(done, src(rng), rng);
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(p.n), 0);
        for (int u = 0; u < p.n; ++u)
            for (int v : out.target.row_neighbors(u))
                rows[static_cast<std::size_t>(u)] |= 1u << v;
        ++counts[static_cast<std::size_t>(done.right_family().find(rows))];
        if (out.in_B) ++in_b;
    }
    const double p_value = uniform_chi_square_p(counts);
    const double bound = pair_mode ? 1.0 - 2.0 * p.d2 / p.n
                                   : 1.0 - static_cast<double>(p.d1) / p.m;
    const double freq = static_cast<double>(in_b) / std::max<long long>(trials, 1);
    const double slack = 3 * std::sqrt(0.25 / std::max<long long>(trials, 1));
    const bool ok = p_value > 0.001 && freq >= bound - slack;
    return json{{"mode", pair_mode ? "pair" : "single"},
                {"trials", trials},
                {"uniformity_p", p_value},
                {"in_b_frequency", freq},
                {"in_b_bound", bound},
                {"ok", ok}};
}

StatMatrixQ random_rational_q(const DegreeParams& p, StatMode mode, Rng& rng) {
    StatMatrixQ q;
    q.mode = mode;
    q.rows = p.n;
    q.cols = mode == StatMode::F ? p.m : p.n;
    q.a = 1;
    q.entries.assign(static_cast<std::size_t>(q.rows) * q.cols, Rational(0));
    std::uniform_int_distribution<int> num(0, 8);
    if (mode == StatMode::F) {
        for (int i = 0; i < q.rows; ++i)
            for (int j = 0; j < q.cols; ++j) q.at(i, j) = Rational(num(rng), 8);
    } else {
        for (int i = 0; i < q.rows; ++i)
            for (int j = i + 1; j < q.cols; ++j)
                q.at(i, j) = q.at(j, i) = Rational(num(rng), 8);
    }
    return q;
}

json verify_concentration_point(const DegreeParams& p, long long q_count,
                                std::uint64_t seed) {
    GraphFamily fam = enumerate_family(p);
    Rng rng = make_rng(seed, 3);
    json modes = json::array();
    bool all_ok = true;  // vacuously ok when every mode is degenerate
    for (StatMode mode : {StatMode::F, StatMode::G}) {
        const TailKind kind = mode == StatMode::F ? TailKind::upper_41 : TailKind::upper_71;
        if ((mode == StatMode::F && p.m <= p.d1) ||
            (mode == StatMode::G && p.n <= 2 * p.d2)) {
            modes.push_back(json{{"mode", mode == StatMode::F ? "f" : "g"},
                                 {"skipped", "degenerate regime"}});
            continue;
        }
        long long exceedances = 0, points = 0;
        for (long long qi = 0; qi < q_count; ++qi) {
            StatMatrixQ q = random_rational_q(p, mode, rng);
            ConcParams cp = conc_params(p, q);
            const double mu = to_double(cp.mu);
            for (int ti = 0; ti < 20; ++ti) {
                const double t = 2.0 * std::max(mu, 1.0) * ti / 19.0;
                ++points;
                if (to_double(exact_tail_probability(fam, q, cp, t, kind)) >
                    tail_bound(cp, 1.0, t, kind))
                    ++exceedances;
            }
        }
        const bool ok = exceedances == 0;
        all_ok = all_ok && ok;
        modes.push_back(json{{"mode", mode == StatMode::F ? "f" : "g"},
                             {"grid_points", points},
                             {"exceedances", exceedances},
                             {"ok", ok}});
    }
    return json{{"modes", modes}, {"ok", all_ok}};
}

json verify_discrepancy_point(const DegreeParams& p, long long trials, std::uint64_t seed) {
    const bool x_live = p.m > p.d1;        // X mode is degenerate at m == d1
    const bool m_live = p.n > 2 * p.d2;    // M mode needs n > 2 d2
    if (!x_live && !m_live) return json{{"skipped", "degenerate regime"}, {"ok", true}};
    Rng rng = make_rng(seed, 4);
    bool ok = true;
    json out;
    if (x_live) {
        DiscrepancyParams dx = dp_params(p, 1.0, DpMode::X);
        if (p.n + p.m <= 24 && p.m <= 32) {
            GraphFamily fam = enumerate_family(p);
            long long failures = 0;
            for (long long i = 0; i < fam.size(); ++i)
                if (!dp_check_exhaustive(fam.member(i), dx).holds) ++failures;
            ok = ok && failures == 0;
            out["exhaustive_members"] = fam.size();
            out["exhaustive_failures"] = failures;
        } else {
            BiregularGraph g = draw(p, seed, 0, 0);
            DPResult res = dp_check_sampled(g, dx, 2000, rng);
            ok = ok && res.holds;
            out["sampled_pairs"] = res.pairs_checked;
            out["sampled_holds"] = res.holds;
        }
    }
    // heavy-couple bound on random vectors
    BiregularGraph g = draw(p, seed, 0, 1);
    std::normal_distribution<double> gauss(0, 1);
    auto unit = [&](int dim, bool mean_zero) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        for (double& c : v) c = gauss(rng);
        if (mean_zero) {
            double mean = 0;
            for (double c : v) mean += c;
            for (double& c : v) c -= mean / dim;
        }
        double norm = 0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        for (double& c : v) c /= norm;
        return v;
    };
    long long heavy_failures = 0;
    for (long long i = 0; i < trials; ++i) {
        if (x_live) {
            std::vector<double> x = unit(p.n, false);
            std::vector<double> y = unit(p.m, true);
            if (!heavy_sum(g, x, &y, dp_params(p, 1.0, DpMode::X)).bound_ok)
                ++heavy_failures;
        }
        if (m_live) {
            std::vector<double> xm = unit(p.n, true);
            if (!heavy_sum(g, xm, nullptr, dp_params(p, 1.0, DpMode::M)).bound_ok)
                ++heavy_failures;
        }
    }
    ok = ok && heavy_failures == 0;
    out["heavy_trials"] = trials;
    out["heavy_failures"] = heavy_failures;
    out["ok"] = ok;
    return out;
}

CommandResult run_point_command(const Options& opt,
                                const std::function<json(const DegreeParams&)>& fn) {
    CommandResult r;
    r.csv_header = "n,m,d1,d2,ok,error";
    for (const DegreeParams& p : opt.grid) {
        json entry{{"params", params_json(p)}};
        bool ok = false;
        std::string error;
        try {
            json body = fn(p);
            ok = body.value("ok", false);
            entry["result"] = body;
        } catch (const std::exception& e) {
            error = e.what();
            entry["error"] = error;
        }
        entry["ok"] = ok;
        r.pass = r.pass && ok;
        r.report.push_back(entry);
        r.csv_rows.push_back(params_csv(p) + "," + (ok ? "1" : "0") + ",\"" + error + "\"");
    }
    return r;
}

json verify_all_point(const DegreeParams& p, const Options& opt) {
    json ledger = json::array();
    bool all_ok = true;
    auto entry = [&](const char* name, const std::function<json()>& fn) {
        json e{{"check", name}};
        bool ok = false;
        try {
            json body = fn();
            ok = body.value("ok", false);
            e["result"] = body;
        } catch (const std::exception& ex) {
            e["error"] = ex.what();
        }
        e["ok"] = ok;
        all_ok = all_ok && ok;
        ledger.push_back(e);
    };

    entry("family_ratios", [&] {
        GraphFamily fam = enumerate_family(p);
        const bool ok =
            family_ratio(p, EdgeConstraint{{{0, 0}}, {}}) == Rational(p.d2, p.n) &&
            (p.n < 2 ||
             family_ratio(p, EdgeConstraint{{{0, 0}, {1, 0}}, {}}) ==
                 Rational(static_cast<long long>(p.d2) * (p.d2 - 1),
                          static_cast<long long>(p.n) * (p.n - 1)));
        return json{{"count", fam.size()}, {"ok", ok}};
    });
    entry("switching_brackets", [&] { return verify_switchings_point(p); });
    entry("meta_single", [&] { return verify_meta_point(p, false); });
    if (p.d2 >= 2)
        entry("meta_pair", [&] { return verify_meta_point(p, true); });
    entry("coupling_single", [&] {
        return verify_coupling_point(p, false, std::min<long long>(opt.trials * 1000, 20000),
                                     opt.seed);
    });
    entry("concentration_tails", [&] { return verify_concentration_point(p, 3, opt.seed); });
    entry("light_mean", [&] {
        Rng rng = make_rng(opt.seed, 5);
        std::normal_distribution<double> gauss(0, 1);
        long long failures = 0;
        for (int i = 0; i < 1000; ++i) {
            std::vector<double> x(static_cast<std::size_t>(p.n)), y(static_cast<std::size_t>(p.m));
            double nx = 0;
            for (double& c : x) {
                c = gauss(rng);
                nx += c * c;
            }
            for (double& c : x) c /= std::sqrt(nx);
            double mean = 0;
            for (double& c : y) {
                c = gauss(rng);
                mean += c;
            }
            double ny = 0;
            for (double& c : y) {
                c -= mean / p.m;
                ny += c * c;
            }
            if (ny == 0) continue;
            for (double& c : y) c /= std::sqrt(ny);
            if (!light_mean_check(x, y, p).bound_ok) ++failures;
        }
        return json{{"pairs", 1000}, {"failures", failures}, {"ok", failures == 0}};
    });
    entry("discrepancy", [&] { return verify_discrepancy_point(p, 200, opt.seed); });
    entry("sampler_uniformity", [&] {
        GraphFamily fam = enumerate_family(p);
        if (fam.size() > 100)
            return json{{"skipped", "family too large for a chi-square budget"}, {"ok", true}};
        const long long trials = 300 * fam.size();
        std::vector<long long> chain(static_cast<std::size_t>(fam.size()), 0);
        std::vector<long long> rej(static_cast<std::size_t>(fam.size()), 0);
        Rng rng = make_rng(opt.seed, 6);
        for (long long i = 0; i < trials; ++i) {
            BiregularGraph a = draw(p, opt.seed, 99, i);
            std::vector<std::uint32_t> rows(static_cast<std::size_t>(p.n), 0);
            for (int u = 0; u < p.n; ++u)
                for (int v : a.row_neighbors(u)) rows[static_cast<std::size_t>(u)] |= 1u << v;
            ++chain[static_cast<std::size_t>(fam.find(rows))];
            BiregularGraph b = sample_rejection(p, rng);
            rows.assign(static_cast<std::size_t>(p.n), 0);
            for (int u = 0; u < p.n; ++u)
                for (int v : b.row_neighbors(u)) rows[static_cast<std::size_t>(u)] |= 1u << v;
            ++rej[static_cast<std::size_t>(fam.find(rows))];
        }
        const double pc = uniform_chi_square_p(chain);
        const double pr = uniform_chi_square_p(rej);
        const double pp = two_sample_chi_square_p(chain, rej);
        const bool ok = pc > 0.001 && pr > 0.001 && pp > 0.001;
        return json{{"trials", trials},
                    {"chain_p", pc},
                    {"rejection_p", pr},
                    {"pairwise_p", pp},
                    {"ok", ok}};
    });

    return json{{"ledger", ledger}, {"ok", all_ok}};
}

void emit(const Options& opt, const std::string& command, const CommandResult& r) {
    json report{{"schema", kSchema},
                {"version", kVersion},
                {"command", command},
                {"seed", opt.seed},
                {"trials", opt.trials},
                {"rng", kRngName},
                {"threads", worker_count()},
                {"grid", json::array()},
                {"results", r.report.is_null() ? json::array() : r.report},
                {"pass", r.pass}};
    for (const DegreeParams& p : opt.grid) report["grid"].push_back(params_json(p));
    const std::string text = report.dump(2) + "\n";
    if (opt.out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(opt.out);
        if (!f) throw Error("cannot write " + opt.out);
        f << text;
    }
    if (!opt.csv.empty()) {
        std::ofstream f(opt.csv);
        if (!f) throw Error("cannot write " + opt.csv);
        f << r.csv_header << "\n";
        for (const std::string& row : r.csv_rows) f << row << "\n";
    }
    if (opt.plot_data) {
        const std::string stem = opt.out == "-" ? command : opt.out;
        std::ofstream f(stem + ".plot.dat");
        if (!f) throw Error("cannot write plot data next to " + stem);
        for (auto [x, y] : r.plot) f << x << " " << y << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite biregular graph sampling, spectra, and verification"};
    app.require_subcommand(1);

    Options opt;
    opt.trials = -1;
    int n = 0, m = 0, d1 = 0, d2 = 0;
    std::string grid_file;
    std::map<const CLI::App*, long long> trial_defaults;
    auto add_common = [&](CLI::App* sub, long long default_trials) {
        sub->add_option("--n", n, "left part size");
        sub->add_option("--m", m, "right part size");
        sub->add_option("--d1", d1, "left degree");
        sub->add_option("--d2", d2, "right degree");
        sub->add_option("--grid", grid_file, "grid file with 'n m d1 d2' per line");
        sub->add_option("--trials", opt.trials, "trials per grid point");
        trial_defaults[sub] = default_trials;
        sub->add_option("--seed", opt.seed, "rng seed");
        sub->add_option("--out", opt.out, "JSON report path, - for stdout");
        sub->add_option("--csv", opt.csv, "CSV output path");
        sub->add_flag("--plot-data", opt.plot_data, "write two-column plot data");
        return sub;
    };

    auto* c_enum = add_common(app.add_subcommand("enumerate", "exhaustive families"), 1);
    auto* c_sample = add_common(app.add_subcommand("sample", "switch-chain samples"), 20);
    auto* c_spectra = add_common(app.add_subcommand("spectra", "singular values"), 20);
    auto* c_sweep = add_common(app.add_subcommand("sweep", "second-eigenvalue sweep"), 20);
    c_sweep->add_option("--statistic", opt.statistic, "sigma2 or lambda-m")
        ->check(CLI::IsMember({"sigma2", "lambda-m"}));
    c_sweep->add_option("--alpha", opt.alpha, "ratio ceiling (0 = default)");
    auto* c_digraph = add_common(app.add_subcommand("digraph", "square regular spectra"), 20);
    c_digraph->add_option("--alpha", opt.alpha, "sigma2/sqrt(d) ceiling (0 = default)");
    auto* c_vsw = add_common(app.add_subcommand("verify-switchings", "count brackets"), 1);
    auto* c_vmeta = add_common(app.add_subcommand("verify-meta", "meta-graph degrees"), 1);
    auto* c_vcoup =
        add_common(app.add_subcommand("verify-coupling", "coupled-step marginals"), 100000);
    auto* c_vconc = add_common(
        app.add_subcommand("verify-concentration", "exact tails vs bounds"), 1);
    c_vconc->add_option("--q-count", opt.q_count, "random rational matrices per mode");
    auto* c_vdp =
        add_common(app.add_subcommand("verify-discrepancy", "subset discrepancy"), 1000);
    auto* c_vall = add_common(app.add_subcommand("verify-all", "full ledger"), 20);

    CLI11_PARSE(app, argc, argv);

    try {
        const CLI::App* active = app.get_subcommands().front();
        if (opt.trials < 0) opt.trials = trial_defaults.at(active);
        if (!grid_file.empty()) {
            opt.grid = parse_grid_file(grid_file);
        } else if (n > 0) {
            opt.grid.push_back(DegreeParams{n, m, d1, d2});
        } else if (app.got_subcommand(c_vall)) {
            opt.grid = {{2, 2, 1, 1}, {3, 3, 2, 2}, {4, 4, 2, 2}, {5, 5, 2, 2}, {2, 3, 3, 2}};
        } else {
            throw Error("no grid: pass --n/--m/--d1/--d2 or --grid");
        }

        CommandResult result;
        std::string command;
        if (app.got_subcommand(c_enum)) {
            command = "enumerate";
            result = cmd_enumerate(opt);
        } else if (app.got_subcommand(c_sample)) {
            command = "sample";
            result = cmd_sample(opt);
        } else if (app.got_subcommand(c_spectra)) {
            command = "spectra";
            result = cmd_spectra(opt);
        } else if (app.got_subcommand(c_sweep)) {
            command = "sweep";
            result = cmd_sweep(opt);
        } else if (app.got_subcommand(c_digraph)) {
            command = "digraph";
            result = cmd_digraph(opt);
        } else if (app.got_subcommand(c_vsw)) {
            command = "verify-switchings";
            result = run_point_command(opt, verify_switchings_point);
        } else if (app.got_subcommand(c_vmeta)) {
            command = "verify-meta";
            result = run_point_command(opt, [&](const DegreeParams& p) {
                json single = verify_meta_point(p, false);
                json out{{"single", single}};
                bool ok = single.value("ok", false);
                if (p.d2 >= 2) {
                    json pair = verify_meta_point(p, true);
                    ok = ok && pair.value("ok", false);
                    out["pair"] = pair;
                }
                out["ok"] = ok;
                return out;
            });
        } else if (app.got_subcommand(c_vcoup)) {
            command = "verify-coupling";
            result = run_point_command(opt, [&](const DegreeParams& p) {
                json single = verify_coupling_point(p, false, opt.trials, opt.seed);
                json out{{"single", single}};
                bool ok = single.value("ok", false);
                if (p.d2 >= 2 && p.n > 2 * p.d2) {
                    json pair = verify_coupling_point(p, true, opt.trials, opt.seed);
                    ok = ok && pair.value("ok", false);
                    out["pair"] = pair;
                }
                out["ok"] = ok;
                return out;
            });
        } else if (app.got_subcommand(c_vconc)) {
            command = "verify-concentration";
            result = run_point_command(opt, [&](const DegreeParams& p) {
                return verify_concentration_point(p, opt.q_count, opt.seed);
            });
        } else if (app.got_subcommand(c_vdp)) {
            command = "verify-discrepancy";
            result = run_point_command(opt, [&](const DegreeParams& p) {
                return verify_discrepancy_point(p, opt.trials, opt.seed);
            });
        } else if (app.got_subcommand(c_vall)) {
            command = "verify-all";
            result = run_point_command(
                opt, [&](const DegreeParams& p) { return verify_all_point(p, opt); });
        }
        emit(opt, command, result);
        return result.pass ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
