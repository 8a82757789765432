#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "awt/cov.hpp"
#include "awt/dist.hpp"
#include "awt/geometry.hpp"
#include "awt/io.hpp"
#include "awt/mc.hpp"
#include "awt/transform.hpp"
#include "awt/validate.hpp"

using namespace awt;

namespace {

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw validation_error("expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key,
              double fallback, bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw validation_error("missing required key '" + key + "'");
        return fallback;
    }
    return std::stod(it->second);
}

WaveletSpec parse_wavelet(const std::string& arg) {
    auto colon = arg.find(':');
    std::string family = arg.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : arg.substr(colon + 1);
    if (family == "morse") {
        auto kv = parse_kv(body);
        return WaveletSpec::morse(kv_num(kv, "b1", 0, true), kv_num(kv, "b2", 0, true),
                                  kv_num(kv, "a", 1.0), kv_num(kv, "peak", 0.0) != 0.0);
    }
    if (family == "klauder") {
        auto kv = parse_kv(body);
        return WaveletSpec::klauder(kv_num(kv, "a", 0, true), kv_num(kv, "b", 0.0),
                                    cplx(kv_num(kv, "g", 0, true), kv_num(kv, "gi", 0.0)));
    }
    if (family == "custom") {
        auto kv = parse_kv(body);
        auto it = kv.find("file");
        if (it == kv.end()) throw validation_error("custom wavelet needs file=PATH");
        return io::read_wavelet_csv(it->second);
    }
    throw validation_error("unknown wavelet family '" + family + "'");
}

SpectralMeasure parse_spectrum(const std::string& arg) {
    auto colon = arg.find(':');
    std::string kind = arg.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : arg.substr(colon + 1);
    if (kind == "white") {
        auto kv = parse_kv(body);
        return SpectralMeasure::white_bandlimited(kv_num(kv, "cutoff", 0, true),
                                                  kv_num(kv, "level", 0, true));
    }
    if (kind == "improper") {
        auto kv = parse_kv(body);
        return SpectralMeasure::white_improper(kv_num(kv, "level", 0, true));
    }
    if (kind == "density") {
        auto kv = parse_kv(body);
        auto it = kv.find("file");
        if (it == kv.end()) throw validation_error("density spectrum needs file=PATH");
        return io::read_density_csv(it->second);
    }
    throw validation_error("unknown spectrum kind '" + kind + "'");
}

std::vector<double> parse_scales(const std::string& arg) {
    auto colon = arg.find(':');
    std::string kind = arg.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : arg.substr(colon + 1);
    std::stringstream ss(body);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
        throw validation_error("scales need min,max,n");
    double lo = std::stod(a), hi = std::stod(b);
    auto n = static_cast<std::size_t>(std::stoul(c));
    if (kind == "log") return log_scales(lo, hi, n);
    if (kind == "lin") return linear_scales(lo, hi, n);
    throw validation_error("unknown scales kind '" + kind + "'");
}

std::vector<double> parse_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> base_comments(std::uint64_t seed, bool reproducible,
                                       const std::string& run_id) {
    std::vector<std::string> c;
    c.push_back("run_id=" + run_id);
    c.push_back("seed=" + std::to_string(seed));
    if (!reproducible) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof(buf), "%F %T", std::gmtime(&now));
        c.push_back(std::string("generated=") + buf);
    }
    return c;
}

std::string make_run_id(const std::string& kind, std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%08llx", kind.c_str(),
                  static_cast<unsigned long long>(seed & 0xffffffffULL));
    return buf;
}

struct CommonOpts {
    std::string out_dir = ".";
    std::uint64_t seed = 20250801;
    std::size_t n_paths = 10000;
    int threads = 2;
    bool reproducible = false;
};

int cmd_scalogram(const std::string& signal_arg, double fs, double duration,
                  const std::string& wavelet_arg, const std::string& scales_arg,
                  const std::string& spectrum_arg, const std::string& formats,
                  bool pgm_db, bool coi, const CommonOpts& opt) {
    std::vector<double> samples;
    double t0 = 0.0, dt = 0.0;
    if (signal_arg == "zero" || signal_arg == "chirp" ||
        signal_arg.rfind("cos:", 0) == 0) {
        if (!(fs > 0.0) || !(duration > 0.0))
            throw validation_error("generated signals need --fs and --duration");
        auto n = static_cast<std::size_t>(std::llround(fs * duration));
        dt = 1.0 / fs;
        if (signal_arg == "zero")
            samples.assign(n, 0.0);
        else if (signal_arg == "chirp")
            samples = chirp_signal(fs, n);
        else
            samples = tone_signal(std::stod(signal_arg.substr(4)), 1.0, fs, n);
    } else {
        auto sig = io::read_signal_csv(signal_arg);
        samples = sig.samples;
        t0 = sig.t0;
        dt = sig.dt;
    }

    if (!spectrum_arg.empty()) {
        auto F = parse_spectrum(spectrum_arg);
        auto noise = synthesize_paths(F, t0, dt, samples.size(), 1, opt.seed,
                                      opt.threads);
        for (std::size_t j = 0; j < samples.size(); ++j) samples[j] += noise.at(0, j);
    }

    auto spec = parse_wavelet(wavelet_arg);
    auto scales = parse_scales(scales_arg);
    auto field = awt_forward(samples, dt, spec, scales, t0, opt.threads);

    if (coi) {
        auto mask = coi_mask(field.grid);
        for (std::size_t k = 0; k < field.values.size(); ++k)
            if (mask[k]) field.values[k] = 0.0;
    }

    std::filesystem::create_directories(opt.out_dir);
    std::string run_id = make_run_id("scalogram", opt.seed);
    auto comments = base_comments(opt.seed, opt.reproducible, run_id);
    std::stringstream fmts(formats);
    std::string f;
    while (std::getline(fmts, f, ',')) {
        if (f == "awtf")
            io::write_field_awtf(field, opt.out_dir + "/field.awtf");
        else if (f == "csv")
            io::write_field_csv(field, opt.out_dir + "/field.csv", comments);
        else if (f == "pgm")
            io::write_field_pgm(field, opt.out_dir + "/field.pgm", pgm_db);
        else
            throw validation_error("unknown format '" + f + "'");
    }
    std::cout << "scalogram: " << field.n_scales() << " scales x " << field.grid.n_t
              << " samples written to " << opt.out_dir << "\n";
    return 0;
}

int cmd_gamma(const std::string& wavelet_arg, const std::string& spectrum_arg,
              const std::string& points_arg, const CommonOpts& opt) {
    auto spec = parse_wavelet(wavelet_arg);
    auto F = parse_spectrum(spectrum_arg);
    std::vector<TimeScalePoint> points;
    std::stringstream ss(points_arg);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw validation_error("points need t:s pairs separated by ';'");
        points.push_back({std::stod(item.substr(0, colon)),
                          std::stod(item.substr(colon + 1))});
    }
    auto g = compute_gamma(F, spec, points);
    std::filesystem::create_directories(opt.out_dir);
    std::string run_id = make_run_id("gamma", opt.seed);
    io::write_gamma_csv(g, opt.out_dir + "/gamma.csv",
                        base_comments(opt.seed, opt.reproducible, run_id));
    std::cout << "gamma: n=" << points.size() << " rcond=" << io::fmt(g.rcond())
              << " pseudo_norm=" << io::fmt(pseudo_cov_norm(g)) << "\n";
    return 0;
}

int cmd_contour(const std::string& field_path, const std::string& levels_arg,
                const std::string& quantiles_arg, const CommonOpts& opt) {
    auto field = io::read_field_awtf(field_path);
    auto mag = magnitude_field(field);
    std::vector<double> levels;
    if (!levels_arg.empty()) levels = parse_list(levels_arg);
    if (!quantiles_arg.empty()) {
        auto sorted = mag.data;
        std::sort(sorted.begin(), sorted.end());
        for (double q : parse_list(quantiles_arg)) {
            if (!(q >= 0.0) || !(q > 0.0 ? q < 1.0 : false))
                throw validation_error("quantiles must lie in (0,1)");
            levels.push_back(sorted[static_cast<std::size_t>(q * (sorted.size() - 1))]);
        }
    }
    if (levels.empty()) throw validation_error("contour: need --levels or --quantiles");

    std::vector<geometry::ContourSet> sets;
    std::vector<std::string> reg_rows;
    for (double c : levels) {
        auto set = geometry::contour_with_regularity(field, c);
        reg_rows.push_back(io::fmt(c) + "," + io::fmt(set.min_grad_norm) + "," +
                           std::to_string(set.polylines.size()));
        sets.push_back(std::move(set));
    }
    std::filesystem::create_directories(opt.out_dir);
    std::string run_id = make_run_id("contour", opt.seed);
    auto comments = base_comments(opt.seed, opt.reproducible, run_id);
    io::write_contours_csv(sets, opt.out_dir + "/contours.csv", comments);
    io::write_csv(opt.out_dir + "/regularity.csv", comments,
                  "level,min_grad_norm,n_polylines", reg_rows);
    std::cout << "contour: " << levels.size() << " level(s) written to " << opt.out_dir
              << "\n";
    return 0;
}

int cmd_validate(const std::string& kind, const CommonOpts& opt,
                 const std::string& config_path) {
    validate::Config cfg;
    cfg.n_paths = opt.n_paths;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    if (!config_path.empty()) {
        auto kv = io::read_manifest(config_path, {"paths", "seed", "threads"});
        if (kv.count("paths")) cfg.n_paths = std::stoul(kv.at("paths"));
        if (kv.count("seed")) cfg.seed = std::stoull(kv.at("seed"));
        if (kv.count("threads")) cfg.threads = std::stoi(kv.at("threads"));
    }

    std::filesystem::create_directories(opt.out_dir);
    std::string run_id = make_run_id("validate-" + kind, cfg.seed);
    auto comments = base_comments(cfg.seed, opt.reproducible, run_id);
    std::vector<std::string> rows;
    bool pass = false;

    std::vector<std::string> failures;
    auto zrow_csv = [&](const std::vector<validate::ZRow>& zrows) {
        for (const auto& r : zrows) {
            rows.push_back(run_id + "," + r.quantity + "," + io::fmt(r.analytic) + "," +
                           io::fmt(r.empirical) + "," + io::fmt(r.se) + "," +
                           io::fmt(r.z));
            if (!r.ok())
                failures.push_back(r.quantity + ": |z| = " + io::fmt(std::abs(r.z)));
        }
    };
    auto bound_csv = [&](const std::vector<validate::BoundRow>& brows) {
        for (const auto& r : brows) {
            rows.push_back(run_id + "," + r.kind + "," + io::fmt(r.eps) + "," +
                           io::fmt(r.delta) + "," + io::fmt(r.q1) + "," +
                           io::fmt(r.q2) + "," + io::fmt(r.bound) + "," +
                           io::fmt(r.empirical) + "," + std::to_string(r.n));
            if (!r.ok)
                failures.push_back(r.kind + " eps=" + io::fmt(r.eps) + " delta=" +
                                   io::fmt(r.delta) + ": empirical " +
                                   io::fmt(r.empirical) + " exceeds bound " +
                                   io::fmt(r.bound));
        }
    };

    if (kind == "pdf-mag") {
        auto rep = validate::pdf_mag(cfg);
        pass = rep.pass;
        for (const auto& r : rep.rows)
            rows.push_back(run_id + "," + io::fmt(r.q) + ",0," + io::fmt(r.line) + "," +
                           io::fmt(r.ks) + "," + io::fmt(std::abs(r.ks)));
        io::write_csv(opt.out_dir + "/validate_pdf_mag.csv", comments,
                      "run_id,x1,x2,analytic,empirical,abs_err", rows);
    } else if (kind == "pdf-phase") {
        auto rep = validate::pdf_phase(cfg);
        pass = rep.pass;
        rows.push_back(run_id + ",0,0," + io::fmt(rep.line) + "," +
                       io::fmt(rep.ks_uniform) + "," + io::fmt(rep.ks_uniform));
        for (const auto& p : rep.peaks)
            rows.push_back(run_id + "," + io::fmt(p.q) + ",0," +
                           std::to_string(p.expect_bin) + "," +
                           std::to_string(p.argmax_bin) + "," +
                           std::to_string(p.circ_dist));
        rows.push_back(run_id + ",3,1.2,1," + io::fmt(1.0 + rep.norm_err) + "," +
                       io::fmt(rep.norm_err));
        io::write_csv(opt.out_dir + "/validate_pdf_phase.csv", comments,
                      "run_id,x1,x2,analytic,empirical,abs_err", rows);
    } else if (kind == "pdf-joint") {
        auto rep = validate::pdf_joint();
        pass = rep.pass;
        rows.push_back(run_id + ",0,0,1," + io::fmt(rep.mag_norm) + "," +
                       io::fmt(rep.mag_norm_err()) + ",mag_norm");
        rows.push_back(run_id + ",0.7,1.3," + io::fmt(rep.laguerre_series) + "," +
                       io::fmt(rep.laguerre_closed) + "," +
                       io::fmt(std::abs(rep.laguerre_closed - rep.laguerre_series)) +
                       ",laguerre");
        rows.push_back(run_id + ",0,0," + io::fmt(rep.j_closed) + "," +
                       io::fmt(rep.j_numeric) + "," +
                       io::fmt(std::abs(rep.j_numeric - rep.j_closed)) +
                       ",j_closed_form");
        rows.push_back(run_id + ",0,0,1," + io::fmt(rep.phase_norm) + "," +
                       io::fmt(rep.phase_norm_err()) + ",phase_norm");
        rows.push_back(run_id + ",0,0,0," +
                       io::fmt(static_cast<double>(rep.argmax_offset_steps)) + "," +
                       io::fmt(static_cast<double>(rep.argmax_offset_steps)) +
                       ",phase_argmax_steps");
        io::write_csv(opt.out_dir + "/validate_pdf_joint.csv", comments,
                      "run_id,x1,x2,analytic,empirical,abs_err,quantity", rows);
    } else if (kind == "cov-mag") {
        auto rep = validate::cov_mag(cfg);
        pass = rep.pass;
        zrow_csv(rep.rows);
        rows.push_back(run_id + ",small_x_slope," +
                       io::fmt(cov::corr_magnitudes_small_x_slope()) + "," +
                       io::fmt(cov::corr_magnitudes_small_x_slope() *
                               (1.0 + rep.slope_rel_err)) +
                       ",0," + io::fmt(rep.slope_rel_err));
        io::write_csv(opt.out_dir + "/validate_cov_mag.csv", comments,
                      "run_id,quantity,analytic,empirical,mc_stderr,z_score", rows);
    } else if (kind == "cov-phase") {
        auto rep = validate::cov_phase(cfg);
        pass = rep.pass;
        zrow_csv(rep.rows);
        for (std::size_t i = 0; i < rep.asym_rel_err.size(); ++i)
            rows.push_back(run_id + ",asym_rel_err_" + std::to_string(i) + ",0," +
                           io::fmt(rep.asym_rel_err[i]) + ",0,0");
        io::write_csv(opt.out_dir + "/validate_cov_phase.csv", comments,
                      "run_id,quantity,analytic,empirical,mc_stderr,z_score", rows);
    } else if (kind == "independence") {
        auto rep = validate::independence(cfg);
        pass = rep.pass;
        rows.push_back(run_id + "," + std::to_string(rep.reps) + "," +
                       std::to_string(rep.non_reject));
        io::write_csv(opt.out_dir + "/validate_independence.csv", comments,
                      "run_id,repetitions,non_rejections", rows);
    } else if (kind == "bounds") {
        auto rep = validate::concentration_bounds(cfg);
        pass = rep.pass;
        bound_csv(rep.rows);
        io::write_csv(opt.out_dir + "/validate_bounds.csv", comments,
                      "run_id,kind,eps,delta,q1,q2,bound,empirical,n", rows);
    } else if (kind == "ridge") {
        auto rep = validate::ridge_bounds(cfg);
        pass = rep.pass;
        bound_csv(rep.rows);
        io::write_csv(opt.out_dir + "/validate_ridge.csv", comments,
                      "run_id,kind,eps,delta,q1,q2,bound,empirical,n", rows);
    } else {
        throw validation_error("unknown validation kind '" + kind + "'");
    }

    std::cout << "validate " << kind << ": " << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& f : failures) std::cerr << "  failed: " << f << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic wavelet transform fields: transforms, statistics, and "
                 "Monte Carlo validation"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string signal_arg = "chirp", wavelet_arg = "morse:b1=2,b2=1";
    std::string scales_arg = "log:0.05,0.8,48", spectrum_arg, formats = "csv,awtf";
    std::string field_path, levels_arg, quantiles_arg, points_arg, config_path;
    std::string validate_kind;
    double fs = 200.0, duration = 10.0;
    bool pgm_db = false, coi = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--threads", opt.threads, "worker cap");
        sub->add_flag("--reproducible", opt.reproducible,
                      "suppress the timestamp header line");
    };

    auto* sc = app.add_subcommand("scalogram", "compute an AWT field");
    sc->add_option("--signal", signal_arg,
                   "CSV path, or zero | chirp | cos:FREQ generators");
    sc->add_option("--fs", fs, "sampling rate for generated signals (Hz)");
    sc->add_option("--duration", duration, "duration for generated signals (s)");
    sc->add_option("--wavelet", wavelet_arg, "morse:b1=,b2=[,a=] | klauder:a=,b=,g= | "
                                             "custom:file=");
    sc->add_option("--scales", scales_arg, "log:min,max,n | lin:min,max,n");
    sc->add_option("--spectrum", spectrum_arg,
                   "optional additive noise: white:cutoff=,level= | density:file=");
    sc->add_option("--format", formats, "comma list of csv,awtf,pgm");
    sc->add_flag("--pgm-db", pgm_db, "dB magnitude mapping in the PGM");
    sc->add_flag("--coi", coi, "zero samples within ceil(4s/dt) of either edge");
    add_common(sc);

    auto* ga = app.add_subcommand("gamma", "covariance matrix of AWT noise samples");
    ga->add_option("--wavelet", wavelet_arg, "wavelet spec");
    ga->add_option("--spectrum", spectrum_arg, "noise spectrum")->required();
    ga->add_option("--points", points_arg, "t:s pairs separated by ';'")->required();
    add_common(ga);

    auto* co = app.add_subcommand("contour", "level sets of a stored field");
    co->add_option("--field", field_path, "AWTF file")->required();
    co->add_option("--levels", levels_arg, "comma list of levels");
    co->add_option("--quantiles", quantiles_arg, "comma list of magnitude quantiles");
    add_common(co);

    auto* va = app.add_subcommand("validate", "analytic-vs-Monte-Carlo checks");
    va->add_option("kind", validate_kind,
                   "pdf-mag | pdf-phase | pdf-joint | cov-mag | cov-phase | "
                   "independence | bounds | ridge")
        ->required();
    va->add_option("--paths", opt.n_paths, "Monte Carlo paths");
    va->add_option("--config", config_path, "key=value manifest (paths/seed/threads)");
    add_common(va);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed())
            return cmd_scalogram(signal_arg, fs, duration, wavelet_arg, scales_arg,
                                 spectrum_arg, formats, pgm_db, coi, opt);
        if (ga->parsed()) return cmd_gamma(wavelet_arg, spectrum_arg, points_arg, opt);
        if (co->parsed()) return cmd_contour(field_path, levels_arg, quantiles_arg, opt);
        if (va->parsed()) return cmd_validate(validate_kind, opt, config_path);
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
