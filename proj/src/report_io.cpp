#include "piconelab/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace piconelab {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    os << content;
    if (!os) throw Error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json domain_json(const Domain& d) {
    ordered_json j;
    j["kind"] = d.dim == 1 ? "interval" : "rectangle";
    j["lo"] = {d.lo[0], d.lo[1]};
    j["hi"] = {d.hi[0], d.hi[1]};
    j["dim"] = d.dim;
    return j;
}

} // namespace

std::string to_json(const PiconePointEval& ev) {
    ordered_json j;
    ordered_json pt = ordered_json::array();
    pt.push_back(ev.point[0]);
    if (ev.point.dim == 2) pt.push_back(ev.point[1]);
    j["point"] = pt;
    j["L"] = ev.L;
    j["R"] = ev.R;
    j["residual"] = ev.residual;
    j["term_I"] = ev.term_I;
    j["term_II"] = ev.term_II;
    j["term_III"] = ev.term_III;
    j["admissible"] = ev.admissible;
    j["variant"] = to_string(ev.variant);
    j["scale"] = ev.scale;
    j["printed_discrepancy"] = ev.printed_discrepancy;
    return j.dump();
}

std::string to_json(const HardyReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "hardy";
    j["config"] = {{"lambda", r.lambda}, {"p", r.p},        {"v", r.v_name},
                   {"g", r.g_name},      {"f", r.f_name}};
    j["supersolution_residual_min"] = r.supersolution_residual_min;
    j["hypothesis_ok"] = r.hypothesis_ok;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.corpus) {
        rows.push_back({{"u", row.u_name},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"margin", row.margin},
                        {"boundary_value_max", row.boundary_value_max},
                        {"boundary_grad_max", row.boundary_grad_max},
                        {"boundary_lap_max", row.boundary_lap_max},
                        {"diagnostic", row.diagnostic},
                        {"pass", row.pass}});
    }
    j["corpus"] = rows;
    j["all_pass"] = r.all_pass;
    return dump(j);
}

std::string to_csv(const HardyReport& r) {
    std::string out = "u,lhs,rhs,margin,boundary_value_max,boundary_grad_max,boundary_lap_max,"
                      "diagnostic,pass\n";
    for (const auto& row : r.corpus) {
        out += row.u_name + "," + format_double(row.lhs) + "," + format_double(row.rhs) + "," +
               format_double(row.margin) + "," + format_double(row.boundary_value_max) + "," +
               format_double(row.boundary_grad_max) + "," + format_double(row.boundary_lap_max) +
               "," + (row.diagnostic ? "1" : "0") + "," + (row.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string to_json(const SturmReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "sturm";
    j["config"] = {{"u", r.u_name}, {"f1", r.f1_name}, {"f2", r.f2_name}, {"p", r.p}};
    j["contradiction_integral"] = r.contradiction_integral;
    j["u_residual_max"] = r.u_residual_max;
    j["pointwise_R_min"] = r.pointwise_R_min;
    j["pointwise_R_min_scaled"] = r.pointwise_R_min_scaled;
    ordered_json rows = ordered_json::array();
    for (const auto& c : r.candidates)
        rows.push_back(
            {{"v", c.v_name}, {"min_R", c.min_R}, {"min_R_scaled", c.min_R_scaled}});
    j["candidates"] = rows;
    j["conclusion"] = r.conclusion == SturmConclusion::no_positive_v_possible
                          ? "no_positive_v_possible"
                          : "inconclusive";
    return dump(j);
}

std::string to_csv(const SturmReport& r) {
    std::string out = "v,min_R,min_R_scaled\n";
    for (const auto& c : r.candidates)
        out += c.v_name + "," + format_double(c.min_R) + "," + format_double(c.min_R_scaled) +
               "\n";
    return out;
}

std::string to_json(const MonotonicityReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "monotonicity";
    j["config"] = {{"p", r.p},
                   {"g", r.g_name},
                   {"domain1", domain_json(r.domain1)},
                   {"domain2", domain_json(r.domain2)}};
    j["lambda1"] = r.result1.lambda;
    j["lambda2"] = r.result2.lambda;
    j["iterations1"] = r.result1.iterations;
    j["iterations2"] = r.result2.iterations;
    j["gap"] = r.gap;
    j["tolerance"] = r.tolerance;
    j["strict"] = r.strict;
    return dump(j);
}

std::string to_csv(const MonotonicityReport& r) {
    std::string out = "iteration,rayleigh_domain1,rayleigh_domain2\n";
    size_t rows = std::max(r.result1.history.size(), r.result2.history.size());
    for (size_t i = 0; i < rows; ++i) {
        out += std::to_string(i) + ",";
        out += i < r.result1.history.size() ? format_double(r.result1.history[i]) : "";
        out += ",";
        out += i < r.result2.history.size() ? format_double(r.result2.history[i]) : "";
        out += "\n";
    }
    return out;
}

std::string to_json(const ProportionalityReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "singular";
    j["config"] = {{"v", r.v_name}, {"f", r.f_name}, {"p", r.p}, {"c1", r.c1_input}};
    j["c1_recovered"] = r.c1_recovered;
    j["relative_deviation"] = r.relative_deviation;
    j["residual_eq1"] = r.residual_eq1;
    j["residual_eq2"] = r.residual_eq2;
    j["int_R"] = r.int_R;
    return dump(j);
}

std::string to_csv(const ProportionalityReport& r, const Domain& domain) {
    std::string out = "quantity,value\n";
    out += "c1_input," + format_double(r.c1_input) + "\n";
    out += "c1_recovered," + format_double(r.c1_recovered) + "\n";
    out += "relative_deviation," + format_double(r.relative_deviation) + "\n";
    out += "residual_eq1," + format_double(r.residual_eq1) + "\n";
    out += "residual_eq2," + format_double(r.residual_eq2) + "\n";
    out += "int_R," + format_double(r.int_R) + "\n";
    out += "domain," + domain.describe() + "\n";
    return out;
}

std::string to_json(const MorseReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "morse";
    j["config"] = {{"a", r.a_name}, {"f", r.f_name}};
    j["fprime0"] = r.fprime0;
    j["f_at_zero"] = r.f_at_zero;
    j["hyp_fprime0_le_1"] = r.hyp_fprime0_le_1;
    j["hyp_f0_zero"] = r.hyp_f0_zero;
    j["hyp_a_positive"] = r.hyp_a_positive;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["morse_index_zero"] = r.morse_index_zero;
    ordered_json rows = ordered_json::array();
    for (const auto& q : r.quad_form)
        rows.push_back({{"w", q.w_name}, {"lhs", q.lhs}, {"rhs", q.rhs}, {"ok", q.ok}});
    j["quad_form"] = rows;
    return dump(j);
}

std::string to_csv(const MorseReport& r) {
    std::string out = "w,lhs,rhs,ok\n";
    for (const auto& q : r.quad_form)
        out += q.w_name + "," + format_double(q.lhs) + "," + format_double(q.rhs) + "," +
               (q.ok ? "1" : "0") + "\n";
    return out;
}

std::string to_json(const EigenResult& r, const std::string& g_name, double p,
                    const Domain& domain, int n) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = "eigen";
    j["config"] = {{"p", p}, {"g", g_name}, {"domain", domain_json(domain)}, {"N", n}};
    j["lambda"] = r.lambda;
    j["iterations"] = r.iterations;
    j["grad_norm"] = r.grad_norm;
    j["converged"] = r.converged;
    j["history"] = r.history;
    return dump(j);
}

std::string to_csv(const EigenResult& r) {
    const GridFunction& u = r.eigenfunction;
    std::string out = u.dim() == 1 ? "x,value\n" : "x,y,value\n";
    if (u.dim() == 1) {
        for (int i = 0; i < u.n; ++i)
            out += format_double(u.node(i)[0]) + "," +
                   format_double(u.values[static_cast<size_t>(i)]) + "\n";
    } else {
        for (int i = 0; i < u.n; ++i)
            for (int k = 0; k < u.n; ++k) {
                Point pt = u.node(i, k);
                out += format_double(pt[0]) + "," + format_double(pt[1]) + "," +
                       format_double(u.values[static_cast<size_t>(i) * u.n + k]) + "\n";
            }
    }
    return out;
}

} // namespace piconelab
