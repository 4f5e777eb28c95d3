// Command-line front end: kernel evaluation, constants, variance tables,
// sampling, and the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "affine/concentration.hpp"
#include "affine/errors.hpp"
#include "affine/geometry.hpp"
#include "affine/kernels.hpp"
#include "affine/sampler.hpp"
#include "affine/variance.hpp"
#include "affine/verify.hpp"

using json = nlohmann::ordered_json;
using namespace affine;

namespace {

// "a+bi" complex syntax; also accepts "i", "2i", "-0.3i", plain reals.
Complex parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i') return {std::stod(s), 0.0};
    s.pop_back();
    // Split at the last +/- that is not a leading sign or an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto imag_part = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (cut == std::string::npos) return {0.0, imag_part(s)};
    return {std::stod(s.substr(0, cut)), imag_part(s.substr(cut))};
}

HalfPlanePoint parse_point(const std::string& raw) {
    Complex z = parse_complex(raw);
    if (!(z.imag() > 0.0))
        throw std::invalid_argument("point '" + raw +
                                    "' must have positive imaginary part");
    return HalfPlanePoint(z);
}

// "x,s" center syntax.
HalfPlanePoint parse_center(const std::string& raw) {
    auto comma = raw.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("center must be given as x,s");
    double x = std::stod(raw.substr(0, comma));
    double s = std::stod(raw.substr(comma + 1));
    if (!(s > 0.0)) throw std::invalid_argument("center scale s must be > 0");
    return {x, s};
}

Normalization parse_norm(const std::string& s) {
    if (s == "diagonal1") return Normalization::Diagonal1;
    if (s == "projection") return Normalization::Projection;
    throw std::invalid_argument("normalization must be diagonal1 or projection");
}

std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const char* dir = std::getenv("AFFINE_OUTPUT_DIR");
    if (!dir || !*dir) return path;
    return (std::filesystem::path(dir) / p).string();
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename into " + path);
}

struct SpecFlags {
    double B = 0.0;
    int n = -1;
    double alpha = 0.0;
    std::string profile;
    std::string normalization = "diagonal1";
    bool has_B = false, has_alpha = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--B", B, "Landau-level field strength B > 1/2");
        cmd->add_option("--n", n, "mode index");
        cmd->add_option("--alpha", alpha, "Laguerre parameter alpha > 0");
        cmd->add_option("--profile", profile,
                        "sampled frequency-profile file (2 or 3 columns)");
        cmd->add_option("--normalization", normalization,
                        "diagonal1 | projection");
    }

    KernelSpec build(CLI::App* cmd) {
        Normalization norm = parse_norm(normalization);
        has_B = cmd->count("--B") > 0;
        has_alpha = cmd->count("--alpha") > 0;
        if (!profile.empty())
            return KernelSpec::generic_wavelet(load_profile(profile), norm);
        if (has_B && has_alpha)
            throw std::invalid_argument("give either --B or --alpha, not both");
        int level = n < 0 ? 0 : n;
        if (has_B) return KernelSpec::maass_landau(B, level, norm);
        if (has_alpha) return KernelSpec::laguerre_mode(alpha, level, norm);
        throw std::invalid_argument("kernel spec needs --B, --alpha or --profile");
    }
};

json kernel_json(const KernelSpec& spec) {
    json k;
    k["description"] = spec.describe();
    if (spec.is_analytic()) {
        k["alpha"] = spec.alpha();
        k["n"] = spec.level();
        if (const MaassLandau* ml = spec.as_maass_landau()) k["B"] = ml->B;
    }
    k["normalization"] = spec.normalization() == Normalization::Projection
                             ? "projection"
                             : "diagonal1";
    return k;
}

std::string fmt_complex(Complex v) {
    std::ostringstream os;
    os.precision(12);
    os << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
       << "i";
    return os.str();
}

// ---- kernel ----

int cmd_kernel(SpecFlags& sf, CLI::App* cmd, const std::string& z_raw,
               const std::string& w_raw, bool check_quadrature) {
    KernelSpec spec = sf.build(cmd);
    HalfPlanePoint z = parse_point(z_raw);
    HalfPlanePoint w = parse_point(w_raw);
    KernelSpec d1 = spec.with_normalization(Normalization::Diagonal1);
    Complex vd = spec.is_analytic() ? kernel_closed(d1, z, w).value
                                    : kernel_quadrature(d1, z, w).value;
    std::cout.precision(12);
    std::cout << "kernel       " << spec.describe() << "\n";
    std::cout << "z            " << fmt_complex(z.z()) << "\n";
    std::cout << "w            " << fmt_complex(w.z()) << "\n";
    std::cout << "diagonal1    " << fmt_complex(vd) << "\n";
    std::cout << "modulus      " << std::abs(vd) << "\n";
    if (spec.is_analytic() && spec.alpha() > 0.0) {
        double C = admissibility(spec);
        std::cout << "projection   " << fmt_complex(vd / C) << "\n";
    } else if (spec.is_generic()) {
        double C = admissibility(spec);
        std::cout << "projection   " << fmt_complex(vd / C) << "\n";
    }
    if (check_quadrature && spec.is_analytic()) {
        Complex vq = kernel_quadrature(d1, z, w).value;
        double rel = std::abs(vd - vq) / std::max(std::abs(vd), 1e-300);
        std::cout << "quadrature   " << fmt_complex(vq) << "\n";
        std::cout << "rel_diff     " << rel << "\n";
        if (rel > 1e-6) {
            std::cerr << "kernel: closed form and quadrature disagree\n";
            return 1;
        }
    }
    return 0;
}

// ---- constants ----

int cmd_constants(SpecFlags& sf, CLI::App* cmd, int depth, bool asymptotics) {
    KernelSpec spec = sf.build(cmd);
    double C = admissibility(spec);
    std::cout.precision(12);
    std::cout << "kernel            " << spec.describe() << "\n";
    std::cout << "admissibility_C   " << C << "\n";
    std::cout << "density_of_states " << 1.0 / C << "\n";
    if (asymptotics) {
        AsymptoticConstant ac = asymptotic_constant(spec, depth);
        std::cout << "kappa             " << ac.kappa << "\n";
        std::cout << "c_extrapolated    " << ac.c_extrapolated << "\n";
        std::cout << "c_integral        " << ac.c_integral << "\n";
    }
    return 0;
}

// ---- variance ----

const char* kCsvHeader =
    "R,v_geometric,v_double,v_trace,expected,bound_area,bound_admissible,"
    "normalization";

int cmd_variance(SpecFlags& sf, CLI::App* cmd, std::vector<double> Rs,
                 const std::string& method, int depth,
                 const std::string& out_path) {
    KernelSpec spec = sf.build(cmd);
    for (double R : Rs)
        if (!(R > 0.0 && R < 1.0))
            throw std::invalid_argument("R values must lie in (0,1)");
    std::string norm_name = spec.normalization() == Normalization::Projection
                                ? "projection"
                                : "diagonal1";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<BoundsReport> rows;
    for (double R : Rs) {
        BoundsReport rep;
        rep.R = R;
        rep.v_geometric = rep.v_double = rep.v_trace = rep.expected = nan;
        rep.bound_area = rep.bound_admissible = nan;
        if (method == "all") {
            rep = bounds_report(spec, R, depth);
        } else if (method == "geometric") {
            rep.v_geometric = variance_geometric(spec, R, depth);
        } else if (method == "double") {
            rep.v_double = variance_double(spec, R, depth);
        } else if (method == "trace") {
            KernelSpec pspec = spec.with_normalization(Normalization::Projection);
            ConcentrationOperator op = build_operator(
                pspec, HyperbolicDisc(HalfPlanePoint::identity(), R), depth);
            TraceReport tr = traces(op);
            double C = admissibility(spec);
            bool diag = spec.normalization() == Normalization::Diagonal1;
            rep.v_trace = diag ? tr.variance * C * C : tr.variance;
            rep.expected = diag ? tr.expected * C : tr.expected;
        } else {
            throw std::invalid_argument(
                "method must be geometric | double | trace | all");
        }
        rows.push_back(rep);
    }

    std::ostringstream csv;
    csv.precision(12);
    csv << kCsvHeader << "\n";
    for (const auto& r : rows)
        csv << r.R << "," << r.v_geometric << "," << r.v_double << ","
            << r.v_trace << "," << r.expected << "," << r.bound_area << ","
            << r.bound_admissible << "," << norm_name << "\n";

    std::string path = resolve_out(out_path);
    if (path.empty()) {
        std::cout << csv.str();
        return 0;
    }
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        json j;
        j["kernel"] = kernel_json(spec);
        j["rows"] = json::array();
        for (const auto& r : rows) {
            json row;
            row["R"] = r.R;
            row["v_geometric"] = r.v_geometric;
            row["v_double"] = r.v_double;
            row["v_trace"] = r.v_trace;
            row["expected"] = r.expected;
            row["bound_area"] = r.bound_area;
            row["bound_admissible"] = r.bound_admissible;
            row["normalization"] = norm_name;
            j["rows"].push_back(row);
        }
        write_atomic(path, j.dump(2) + "\n");
    } else {
        write_atomic(path, csv.str());
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

// ---- sample ----

std::string render_svg(const PointConfiguration& cfg) {
    const double W = 400.0, c0 = W / 2.0, scale = W / 2.0 - 10.0;
    DiskPoint u0 = cayley(cfg.region.center);
    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << W << "\" viewBox=\"0 0 " << W << " " << W
        << "\">\n";
    svg << "<circle cx=\"" << c0 << "\" cy=\"" << c0 << "\" r=\"" << scale
        << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
    svg << "<circle cx=\"" << c0 << "\" cy=\"" << c0 << "\" r=\""
        << scale * cfg.region.R << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (const auto& p : cfg.points) {
        // Move the region center to the origin of the disc model.
        DiskPoint u = cayley(p);
        Complex v = (u.u - u0.u) / (1.0 - std::conj(u0.u) * u.u);
        svg << "<circle cx=\"" << c0 + scale * v.real() << "\" cy=\""
            << c0 - scale * v.imag() << "\" r=\"2.5\" fill=\"#1f5fa8\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_sample(SpecFlags& sf, CLI::App* cmd, double R,
               const std::string& center_raw, int depth, std::uint64_t seed,
               int n_samples, bool stats, const std::string& out_path,
               const std::string& svg_path) {
    KernelSpec spec =
        sf.build(cmd).with_normalization(Normalization::Projection);
    if (!(R > 0.0 && R < 1.0))
        throw std::invalid_argument("R must lie in (0,1)");
    HyperbolicDisc region(parse_center(center_raw), R);
    ConcentrationOperator op = build_operator(spec, region, depth);
    TraceReport tr = traces(op);

    if (stats) {
        BatchStats st = batch_stats(op, n_samples, seed);
        std::cout.precision(8);
        std::cout << "samples        " << st.n_samples << "\n";
        std::cout << "mean_count     " << st.mean << " (trace " << tr.expected
                  << ", se " << st.se_mean << ")\n";
        std::cout << "var_count      " << st.var << " (trace " << tr.variance
                  << ", se " << st.se_var << ")\n";
    }

    PointConfiguration cfg = sample(op, seed);
    json j;
    j["kernel"] = kernel_json(spec);
    j["region"] = {{"center", {region.center.x, region.center.s}},
                   {"R", region.R}};
    j["seed"] = seed;
    j["points"] = json::array();
    for (const auto& p : cfg.points) j["points"].push_back({p.x, p.s});

    std::string path = resolve_out(out_path);
    if (path.empty())
        std::cout << j.dump(2) << "\n";
    else {
        write_atomic(path, j.dump(2) + "\n");
        std::cout << "wrote " << path << "\n";
    }
    if (!svg_path.empty()) {
        std::string sp = resolve_out(svg_path);
        write_atomic(sp, render_svg(cfg));
        std::cout << "wrote " << sp << "\n";
    }
    return 0;
}

// ---- verify ----

int cmd_verify(const std::string& only, const std::string& profile,
               const std::string& json_path, const std::string& cli_path) {
    VerifyOptions opt;
    if (profile == "strict")
        opt.strict = true;
    else if (profile != "default")
        throw std::invalid_argument("tol-profile must be default or strict");
    opt.cli_path = cli_path;
    std::vector<CheckResult> results = run_verification(only, opt);
    if (results.empty())
        throw std::invalid_argument("no criteria match module '" + only + "'");
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion "
                  << r.criterion << " (" << r.module << ") " << r.name << ": "
                  << r.detail << "\n";
    }
    std::cout << (all ? "VERIFY OK" : "VERIFY FAILED") << " (" << results.size()
              << " criteria)\n";
    if (!json_path.empty()) {
        json j;
        j["passed"] = all;
        j["criteria"] = json::array();
        for (const auto& r : results)
            j["criteria"].push_back({{"criterion", r.criterion},
                                     {"module", r.module},
                                     {"name", r.name},
                                     {"passed", r.passed},
                                     {"detail", r.detail}});
        write_atomic(resolve_out(json_path), j.dump(2) + "\n");
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine ensemble: wavelet DPPs on the upper half-plane"};
    app.require_subcommand(1);

    // kernel
    auto* kernel = app.add_subcommand("kernel", "evaluate the kernel at (z,w)");
    SpecFlags kf;
    kf.attach(kernel);
    std::string z_raw = "i", w_raw = "i";
    bool check_quadrature = false;
    kernel->add_option("--z", z_raw, "first point, a+bi with b > 0");
    kernel->add_option("--w", w_raw, "second point, a+bi with b > 0");
    kernel->add_flag("--check-quadrature", check_quadrature,
                     "cross-check against the quadrature kernel");

    // constants
    auto* constants = app.add_subcommand("constants",
                                         "admissibility and asymptotic constants");
    SpecFlags cf;
    cf.attach(constants);
    int c_depth = 2;
    bool c_asym = false;
    constants->add_option("--depth", c_depth, "grid refinement level");
    constants->add_flag("--asymptotics", c_asym,
                        "also estimate the variance asymptotics (slow)");

    // variance
    auto* variance = app.add_subcommand("variance", "number-variance table");
    SpecFlags vf;
    vf.attach(variance);
    std::vector<double> Rs = {0.5};
    std::string method = "all", v_out;
    int v_depth = 2;
    variance->add_option("--R", Rs, "disc radii in (0,1)")->delimiter(',');
    variance->add_option("--method", method, "geometric | double | trace | all");
    variance->add_option("--depth", v_depth, "grid refinement level");
    variance->add_option("--out", v_out, "output file (.csv or .json)");

    // sample
    auto* smp = app.add_subcommand("sample", "draw point configurations");
    SpecFlags pf;
    pf.attach(smp);
    double s_R = 0.5;
    std::string s_center = "0,1", s_out, s_svg;
    int s_depth = 2, s_count = 200;
    std::uint64_t s_seed = 0;
    bool s_stats = false;
    smp->add_option("--R", s_R, "disc radius in (0,1)");
    smp->add_option("--center", s_center, "disc center x,s (default i)");
    smp->add_option("--depth", s_depth, "grid refinement level");
    smp->add_option("--seed", s_seed, "sampler seed");
    smp->add_option("--samples", s_count, "sample count for --stats");
    smp->add_flag("--stats", s_stats, "print batch statistics");
    smp->add_option("--out", s_out, "JSON output file");
    smp->add_option("--svg", s_svg, "SVG scatter output file");

    // verify
    auto* ver = app.add_subcommand("verify", "run the verification suite");
    std::string only, profile = "default", ver_json;
    ver->add_option("--only", only, "restrict to one module tag");
    ver->add_option("--tol-profile", profile, "default | strict");
    ver->add_option("--json", ver_json, "write a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (kernel->parsed())
            return cmd_kernel(kf, kernel, z_raw, w_raw, check_quadrature);
        if (constants->parsed())
            return cmd_constants(cf, constants, c_depth, c_asym);
        if (variance->parsed())
            return cmd_variance(vf, variance, Rs, method, v_depth, v_out);
        if (smp->parsed())
            return cmd_sample(pf, smp, s_R, s_center, s_depth, s_seed, s_count,
                              s_stats, s_out, s_svg);
        if (ver->parsed())
            return cmd_verify(only, profile, ver_json, argv[0]);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
