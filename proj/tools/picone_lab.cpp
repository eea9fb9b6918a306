// picone-lab: one subcommand per identity check and application experiment.
// Exit codes: 0 all checks passed, 1 a pass flag is false, 2 configuration
// error, 3 admissibility/hypothesis violation, 4 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"

#include "piconelab/report_io.hpp"
#include "piconelab/suite.hpp"

using namespace piconelab;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string out = ".";
    std::string domain = "interval 0 1";
    double p = 2.0;
    std::uint64_t seed = 20250117ull;
    int panels = 32;
    int gauss_order = 5;
};

void add_out_option(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output directory for report files")
        ->envname("PICONE_LAB_OUT")
        ->capture_default_str();
}

void write_report(const std::string& out_dir, const std::string& name, const std::string& json,
                  const std::string& csv) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/" + name + ".report.json", json);
    write_text_file(out_dir + "/" + name + ".data.csv", csv);
}

int finish(bool pass, const std::string& line) {
    std::printf("%s %s\n", pass ? "PASS" : "FAIL", line.c_str());
    return pass ? 0 : 1;
}

int run_verify_identity(const CommonOpts& c, const std::string& lemma, const std::string& u_spec,
                        const std::string& v_spec, const std::string& f_name,
                        const std::string& form_name, int points) {
    Domain dom = parse_domain(c.domain);
    FieldExpr u = catalog_entry(u_spec, dom);
    FieldExpr v = catalog_entry(v_spec, dom);
    if (lemma == "picb" && c.p != 2.0)
        throw ConfigError("picb is a p = 2 identity; drop --p or pass --p 2");
    ExponentPair p(c.p);

    AdmissibilityReport adm = admissible_pair(u, v, dom, interior_samples(dom, dom.dim == 1 ? 1000 : 64), p);
    if (!adm.ok()) {
        std::string first = adm.violations.front().condition;
        throw AdmissibilityViolation("(u, v) pair violates '" + first + "': " +
                                     std::to_string(adm.violations.size()) +
                                     " hypothesis failures across " +
                                     std::to_string(adm.sample_count) + " samples");
    }

    NonlinearityProfile prof = nonlinearity_catalog(f_name, p);
    NonlinearForm form =
        form_name == "printed" ? NonlinearForm::printed : NonlinearForm::rederived;
    PiconeVariant variant = lemma == "2.2"    ? PiconeVariant::power
                            : lemma == "picb" ? PiconeVariant::dunninger_p2
                            : form == NonlinearForm::printed ? PiconeVariant::nonlinear_printed
                                                             : PiconeVariant::nonlinear_rederived;

    auto pts = random_interior_points(dom, points, c.seed);
    double max_res = 0.0, min_L = 0.0, max_printed_disc = 0.0;
    PiconePointEval worst;
    std::string csv = csv_header_point_eval(dom.dim) + "\n";
    for (const Point& x : pts) {
        PiconePointEval ev;
        switch (variant) {
        case PiconeVariant::power: ev = eval_L_power(u, v, x, p); break;
        case PiconeVariant::dunninger_p2: ev = eval_dunninger_p2(u, v, x); break;
        default: ev = eval_L_nonlinear(u, v, prof, x, p, form); break;
        }
        if (std::abs(ev.residual) / ev.scale >= max_res) worst = ev;
        max_res = std::max(max_res, std::abs(ev.residual) / ev.scale);
        if (ev.admissible) min_L = std::min(min_L, ev.L / ev.scale);
        max_printed_disc = std::max(max_printed_disc, std::abs(ev.printed_discrepancy) / ev.scale);
        csv += csv_row_point_eval(ev) + "\n";
    }

    double res_tol = variant == PiconeVariant::dunninger_p2 ? 1e-12 : 1e-10;
    bool diagnostic_form = variant == PiconeVariant::nonlinear_printed;
    bool pass = diagnostic_form || (max_res <= res_tol && min_L >= -1e-12);

    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "verify-identity";
    j["config"] = {{"lemma", lemma},   {"variant", to_string(variant)},
                   {"p", p.p},         {"u", u_spec},
                   {"v", v_spec},      {"f", f_name},
                   {"points", points}, {"seed", c.seed},
                   {"domain", c.domain}};
    j["max_residual_scaled"] = max_res;
    j["min_L_scaled"] = min_L;
    j["max_printed_discrepancy_scaled"] = max_printed_disc;
    j["diagnostic_form"] = diagnostic_form;
    j["worst_point"] = ordered_json::parse(to_json(worst));
    j["pass"] = pass;
    write_report(c.out, "verify-identity", j.dump(2) + "\n", csv);

    return finish(pass, "verify-identity " + lemma + " (" + to_string(variant) +
                            "): max|L-R|/scale = " + format_double(max_res) +
                            ", min L/scale = " + format_double(min_L));
}

int run_young_cmd(const CommonOpts& c, int trials, int equality_trials) {
    YoungStats st = young_sweep(trials, equality_trials, c.seed);
    bool pass = st.min_gap >= 0.0 && st.max_equality_gap <= 1e-14;
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "young";
    j["config"] = {{"trials", trials}, {"equality_trials", equality_trials}, {"seed", c.seed}};
    j["min_gap"] = st.min_gap;
    j["max_equality_gap"] = st.max_equality_gap;
    j["pass"] = pass;
    std::string csv = "quantity,value\nmin_gap," + format_double(st.min_gap) +
                      "\nmax_equality_gap," + format_double(st.max_equality_gap) + "\n";
    write_report(c.out, "young", j.dump(2) + "\n", csv);
    return finish(pass, "young: min gap = " + format_double(st.min_gap) +
                            ", max equality-case gap = " + format_double(st.max_equality_gap));
}

int run_hardy_cmd(const CommonOpts& c, const std::string& v_spec, const std::string& g_spec,
                  const std::string& f_name, double lambda) {
    Domain dom = parse_domain(c.domain);
    ExponentPair p(c.p);
    QuadratureRule rule(c.panels, c.gauss_order);
    NamedField v{v_spec, catalog_entry(v_spec, dom)};
    NamedField g{g_spec, catalog_entry(g_spec, dom)};
    if (lambda == 0.0) lambda = std::pow(M_PI, 4);
    HardyReport rep = run_hardy(v, nonlinearity_catalog(f_name, p), g, lambda, p,
                                hardy_corpus(dom), dom, rule);
    bool pass = rep.hypothesis_ok && rep.all_pass;
    write_report(c.out, "hardy", to_json(rep), to_csv(rep));
    return finish(pass, "hardy: supersolution residual min = " +
                            format_double(rep.supersolution_residual_min) + ", all margins >= 0: " +
                            (rep.all_pass ? "yes" : "no"));
}

int run_sturm_cmd(const CommonOpts& c, const std::string& u_spec, const std::string& f1_spec,
                  const std::string& f2_spec, const std::string& f_name) {
    Domain dom = parse_domain(c.domain);
    ExponentPair p(c.p);
    QuadratureRule rule(c.panels, c.gauss_order);
    NamedField u{u_spec, catalog_entry(u_spec, dom)};
    NamedField f1{f1_spec, catalog_entry(f1_spec, dom)};
    NamedField f2{f2_spec, catalog_entry(f2_spec, dom)};
    SturmReport rep = run_sturm(u, f1, f2, p, nonlinearity_catalog(f_name, p),
                                sturm_candidates(dom), dom, rule);
    bool pass = rep.conclusion == SturmConclusion::no_positive_v_possible;
    write_report(c.out, "sturm", to_json(rep), to_csv(rep));
    return finish(pass, "sturm: contradiction integral = " +
                            format_double(rep.contradiction_integral) + ", conclusion = " +
                            (pass ? "no_positive_v_possible" : "inconclusive"));
}

int run_eigen_cmd(const CommonOpts& c, const std::string& g_spec, int n, int max_iters,
                  double grad_tol) {
    Domain dom = parse_domain(c.domain);
    ExponentPair p(c.p);
    NamedField g{g_spec, catalog_entry(g_spec, dom)};
    EigenOptions opts;
    opts.max_iters = max_iters;
    opts.grad_tol = grad_tol;
    EigenResult res = principal_eigenvalue(dom, g.expr, p, n, opts);

    ordered_json j = ordered_json::parse(to_json(res, g_spec, p.p, dom, n));
    bool pass = res.converged;
    if (p.p == 2.0) {
        EigenResult oracle = p2_oracle(dom, g.expr, n);
        double rel = std::abs(res.lambda - oracle.lambda) / oracle.lambda;
        j["oracle_lambda"] = oracle.lambda;
        j["vs_oracle_rel"] = rel;
        pass = pass && rel <= 1e-8;
    }
    j["pass"] = pass;
    write_report(c.out, "eigen", j.dump(2) + "\n", to_csv(res));
    return finish(pass, "eigen: lambda = " + format_double(res.lambda) + " after " +
                            std::to_string(res.iterations) + " iterations");
}

int run_monotonicity_cmd(const CommonOpts& c, const std::string& domain2_spec,
                         const std::string& g_spec, int n) {
    Domain d1 = parse_domain(c.domain);
    Domain d2 = parse_domain(domain2_spec);
    NamedField g{g_spec, catalog_entry(g_spec, d1)};
    MonotonicityReport rep = run_monotonicity(d1, d2, g, ExponentPair(c.p), n);
    write_report(c.out, "monotonicity", to_json(rep), to_csv(rep));
    return finish(rep.strict, "monotonicity: lambda1 = " + format_double(rep.result1.lambda) +
                                  ", lambda2 = " + format_double(rep.result2.lambda) +
                                  ", gap = " + format_double(rep.gap));
}

int run_singular_cmd(const CommonOpts& c, const std::string& v_spec, double c1,
                     const std::string& f_name) {
    Domain dom = parse_domain(c.domain);
    ExponentPair p(c.p);
    QuadratureRule rule(c.panels, c.gauss_order);
    NamedField v{v_spec, catalog_entry(v_spec, dom)};
    if (c1 == 0.0) c1 = std::pow(M_PI, -4);
    ProportionalityReport rep =
        run_singular_system(v, c1, nonlinearity_catalog(f_name, p), p, dom, rule);
    bool pass = rep.relative_deviation <= 1e-10 && std::abs(rep.int_R) <= 1e-10;
    ordered_json j = ordered_json::parse(to_json(rep));
    j["pass"] = pass;
    write_report(c.out, "singular", j.dump(2) + "\n", to_csv(rep, dom));
    return finish(pass, "singular: recovered c1 = " + format_double(rep.c1_recovered) +
                            ", int R = " + format_double(rep.int_R));
}

int run_morse_cmd(const CommonOpts& c, const std::string& a_spec, const std::string& f_name,
                  int n) {
    Domain dom = parse_domain(c.domain);
    NamedField a{a_spec, catalog_entry(a_spec, dom)};
    MorseReport rep = run_morse(a, nonlinearity_catalog(f_name, ExponentPair(2.0)), dom, n);
    bool quad_ok = true;
    for (const auto& q : rep.quad_form) quad_ok = quad_ok && q.ok;
    bool pass = rep.morse_index_zero && quad_ok;
    ordered_json j = ordered_json::parse(to_json(rep));
    j["pass"] = pass;
    write_report(c.out, "morse", j.dump(2) + "\n", to_csv(rep));
    return finish(pass, "morse: min eigenvalue = " + format_double(rep.min_eigenvalue) +
                            ", index zero: " + (rep.morse_index_zero ? "yes" : "no"));
}

int run_suite_cmd(const CommonOpts& c) {
    SuiteResult res = run_suite(c.out);
    for (const JobResult& job : res.jobs)
        std::printf("%s %s: %s\n", job.pass ? "PASS" : "FAIL", job.name.c_str(),
                    job.summary.c_str());
    std::printf("%s suite: %zu/%zu jobs passed, %zu report files in %s\n",
                res.all_pass ? "PASS" : "FAIL",
                static_cast<size_t>(std::count_if(res.jobs.begin(), res.jobs.end(),
                                                  [](const JobResult& j) { return j.pass; })),
                res.jobs.size(), res.files.size() / 2, c.out.c_str());
    return res.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"picone-lab: pointwise Picone-identity checks for the p-biharmonic operator "
                 "and their variational consequences"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a config file (flags override)");
    app.allow_config_extras(false);

    CommonOpts c;
    std::function<int()> action;

    {
        auto* cmd = app.add_subcommand("verify-identity", "pointwise L = R residual sweep");
        auto opt = std::make_shared<std::tuple<std::string, std::string, std::string, std::string,
                                               std::string, int>>("2.2", "bubble", "sine_mode 1",
                                                                  "power", "rederived", 500);
        cmd->add_option("--lemma", std::get<0>(*opt), "identity: 2.2 | 2.3 | picb")
            ->check(CLI::IsMember({"2.2", "2.3", "picb"}))
            ->capture_default_str();
        cmd->add_option("--p", c.p, "exponent p > 1")->required();
        cmd->add_option("--u", std::get<1>(*opt), "catalog entry or s-expression for u")
            ->capture_default_str();
        cmd->add_option("--v", std::get<2>(*opt), "catalog entry or s-expression for v")
            ->capture_default_str();
        cmd->add_option("--f", std::get<3>(*opt), "nonlinearity (lemma 2.3)")
            ->capture_default_str();
        cmd->add_option("--form", std::get<4>(*opt), "lemma 2.3 L-form: rederived | printed")
            ->check(CLI::IsMember({"rederived", "printed"}))
            ->capture_default_str();
        cmd->add_option("--points", std::get<5>(*opt), "random interior evaluation points")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--domain", c.domain, "evaluation domain")->capture_default_str();
        cmd->add_option("--seed", c.seed, "point sampling seed")->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_verify_identity(c, std::get<0>(*opt), std::get<1>(*opt),
                                           std::get<2>(*opt), std::get<3>(*opt),
                                           std::get<4>(*opt), std::get<5>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("young", "Young-inequality gap sampling");
        auto trials = std::make_shared<std::pair<int, int>>(10000, 1000);
        cmd->add_option("--trials", trials->first, "random (a, b, p) trials")
            ->capture_default_str();
        cmd->add_option("--equality-trials", trials->second, "constructed a^p = b^q cases")
            ->capture_default_str();
        cmd->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, trials] {
            action = [&, trials] { return run_young_cmd(c, trials->first, trials->second); };
        });
    }
    {
        auto* cmd = app.add_subcommand("hardy", "Hardy-type inequality experiment");
        auto opt = std::make_shared<std::tuple<std::string, std::string, std::string, double>>(
            "sine_mode 1", "poly 1", "identity", 0.0);
        cmd->add_option("--v", std::get<0>(*opt), "positive supersolution field")
            ->capture_default_str();
        cmd->add_option("--g", std::get<1>(*opt), "weight g >= 0")->capture_default_str();
        cmd->add_option("--f", std::get<2>(*opt), "nonlinearity")->capture_default_str();
        cmd->add_option("--lambda", std::get<3>(*opt), "inequality constant (0 = pi^4)")
            ->capture_default_str();
        cmd->add_option("--p", c.p, "exponent")->capture_default_str();
        cmd->add_option("--domain", c.domain, "domain")->capture_default_str();
        cmd->add_option("--panels", c.panels, "quadrature panels per axis")->capture_default_str();
        cmd->add_option("--gauss-order", c.gauss_order, "Gauss nodes per panel")
            ->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_hardy_cmd(c, std::get<0>(*opt), std::get<1>(*opt), std::get<2>(*opt),
                                     std::get<3>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("sturm", "Sturmian comparison experiment");
        auto opt = std::make_shared<std::tuple<std::string, std::string, std::string, std::string>>(
            "sine_mode 1", "(pow pi 4)", "(+ (pow pi 4) 1)", "identity");
        cmd->add_option("--u", std::get<0>(*opt), "positive solution of problem 1")
            ->capture_default_str();
        cmd->add_option("--f1", std::get<1>(*opt), "weight f1")->capture_default_str();
        cmd->add_option("--f2", std::get<2>(*opt), "weight f2 > f1")->capture_default_str();
        cmd->add_option("--f", std::get<3>(*opt), "nonlinearity")->capture_default_str();
        cmd->add_option("--p", c.p, "exponent")->capture_default_str();
        cmd->add_option("--domain", c.domain, "domain")->capture_default_str();
        cmd->add_option("--panels", c.panels, "quadrature panels per axis")->capture_default_str();
        cmd->add_option("--gauss-order", c.gauss_order, "Gauss nodes per panel")
            ->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_sturm_cmd(c, std::get<0>(*opt), std::get<1>(*opt), std::get<2>(*opt),
                                     std::get<3>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("eigen", "principal p-biharmonic eigenvalue");
        auto opt = std::make_shared<std::tuple<std::string, int, int, double>>("poly 1", 399, 500,
                                                                               1e-5);
        cmd->add_option("--g", std::get<0>(*opt), "positive weight")->capture_default_str();
        cmd->add_option("--N", std::get<1>(*opt), "interior grid points per axis")
            ->capture_default_str();
        cmd->add_option("--max-iters", std::get<2>(*opt), "descent iteration cap")
            ->capture_default_str();
        cmd->add_option("--grad-tol", std::get<3>(*opt), "gradient-norm stopping tolerance")
            ->capture_default_str();
        cmd->add_option("--p", c.p, "exponent")->capture_default_str();
        cmd->add_option("--domain", c.domain, "domain")->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_eigen_cmd(c, std::get<0>(*opt), std::get<1>(*opt), std::get<2>(*opt),
                                     std::get<3>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("monotonicity", "strict domain monotonicity of lambda_1");
        auto opt = std::make_shared<std::tuple<std::string, std::string, int>>("interval 0 2",
                                                                               "poly 1", 399);
        cmd->add_option("--domain2", std::get<0>(*opt), "enclosing domain")->capture_default_str();
        cmd->add_option("--g", std::get<1>(*opt), "positive weight")->capture_default_str();
        cmd->add_option("--N", std::get<2>(*opt), "interior grid points per axis")
            ->capture_default_str();
        cmd->add_option("--p", c.p, "exponent")->capture_default_str();
        cmd->add_option("--domain", c.domain, "inner domain")->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_monotonicity_cmd(c, std::get<0>(*opt), std::get<1>(*opt),
                                            std::get<2>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("singular", "singular-system proportionality rigidity");
        auto opt = std::make_shared<std::tuple<std::string, double, std::string>>("sine_mode 1",
                                                                                  0.0, "identity");
        cmd->add_option("--v", std::get<0>(*opt), "second component v")->capture_default_str();
        cmd->add_option("--c1", std::get<1>(*opt), "claimed ratio u/v (0 = pi^-4)")
            ->capture_default_str();
        cmd->add_option("--f", std::get<2>(*opt), "nonlinearity")->capture_default_str();
        cmd->add_option("--p", c.p, "exponent")->capture_default_str();
        cmd->add_option("--domain", c.domain, "domain")->capture_default_str();
        cmd->add_option("--panels", c.panels, "quadrature panels per axis")->capture_default_str();
        cmd->add_option("--gauss-order", c.gauss_order, "Gauss nodes per panel")
            ->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_singular_cmd(c, std::get<0>(*opt), std::get<1>(*opt),
                                        std::get<2>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("morse", "Morse index of the trivial solution");
        auto opt = std::make_shared<std::tuple<std::string, std::string, int>>("poly 1",
                                                                               "identity", 399);
        cmd->add_option("--a", std::get<0>(*opt), "positive coefficient a(x)")
            ->capture_default_str();
        cmd->add_option("--f", std::get<1>(*opt), "nonlinearity (f(0) = 0, f'(0) <= 1)")
            ->capture_default_str();
        cmd->add_option("--N", std::get<2>(*opt), "interior grid points per axis")
            ->capture_default_str();
        cmd->add_option("--domain", c.domain, "domain")->capture_default_str();
        add_out_option(cmd, c);
        cmd->callback([&, opt] {
            action = [&, opt] {
                return run_morse_cmd(c, std::get<0>(*opt), std::get<1>(*opt), std::get<2>(*opt));
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("suite", "run the default verification suite (9 reports)");
        add_out_option(cmd, c);
        cmd->callback([&] { action = [&] { return run_suite_cmd(c); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnknownCatalogEntry& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DimensionMismatch& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const AdmissibilityViolation& e) {
        std::fprintf(stderr, "admissibility violation: %s\n", e.what());
        return 3;
    } catch (const HypothesisViolation& e) {
        std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 4;
    }
}
