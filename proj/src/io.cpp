#include "awt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace awt {
namespace io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_raw(std::ofstream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <typename T>
T read_raw(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw validation_error("awtf: truncated file");
    return v;
}

[[noreturn]] void csv_fail(const std::string& path, std::size_t line,
                           const std::string& what) {
    throw validation_error(path + ":" + std::to_string(line) + ": " + what);
}

// Splits a CSV line; no quoting (numeric tables only).
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used])))
            ++used;
        if (used != s.size()) csv_fail(path, line, "trailing characters in number");
        return v;
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        csv_fail(path, line, "not a number: '" + s + "'");
    }
}

struct CsvReader {
    std::string path;
    std::ifstream is;
    std::size_t line_no = 0;
    explicit CsvReader(const std::string& p) : path(p), is(p) {
        if (!is) throw validation_error(path + ": cannot open");
    }
    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(is, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            fields = split_csv(line);
            return true;
        }
        return false;
    }
};

}  // namespace

void write_field_awtf(const ComplexField& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error(path + ": cannot open for writing");
    os.write("AWTF", 4);
    std::uint32_t version = 1;
    write_raw(os, &version, 4);
    std::uint64_t n_scales = field.n_scales(), n_t = field.grid.n_t;
    write_raw(os, &n_scales, 8);
    write_raw(os, &n_t, 8);
    write_raw(os, &field.grid.t0, 8);
    write_raw(os, &field.grid.dt, 8);
    for (double s : field.grid.scales) write_raw(os, &s, 8);
    for (const cplx& v : field.values) {
        double re = v.real(), im = v.imag();
        write_raw(os, &re, 8);
        write_raw(os, &im, 8);
    }
    if (!os) throw validation_error(path + ": write failed");
}

ComplexField read_field_awtf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw validation_error(path + ": cannot open");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "AWTF", 4) != 0)
        throw validation_error(path + ": bad magic, not an AWTF file");
    auto version = read_raw<std::uint32_t>(is);
    if (version != 1)
        throw validation_error(path + ": unsupported AWTF version " +
                               std::to_string(version));
    auto n_scales = read_raw<std::uint64_t>(is);
    auto n_t = read_raw<std::uint64_t>(is);
    if (n_scales == 0 || n_t == 0 || n_scales > (1u << 20) || n_t > (1u << 28))
        throw validation_error(path + ": implausible AWTF dimensions");
    ComplexField f;
    f.grid.t0 = read_raw<double>(is);
    f.grid.dt = read_raw<double>(is);
    f.grid.n_t = n_t;
    f.grid.scales.resize(n_scales);
    for (auto& s : f.grid.scales) s = read_raw<double>(is);
    f.values.resize(n_scales * n_t);
    for (auto& v : f.values) {
        double re = read_raw<double>(is);
        double im = read_raw<double>(is);
        v = cplx(re, im);
    }
    f.grid.validate();
    return f;
}

void write_field_csv(const ComplexField& field, const std::string& path,
                     const std::vector<std::string>& header_comments) {
    std::vector<std::string> rows;
    rows.reserve(field.values.size());
    for (std::size_t si = 0; si < field.n_scales(); ++si) {
        for (std::size_t j = 0; j < field.grid.n_t; ++j) {
            cplx v = field.at(si, j);
            rows.push_back(fmt(field.grid.time(j)) + "," + fmt(field.grid.scales[si]) +
                           "," + fmt(v.real()) + "," + fmt(v.imag()) + "," +
                           fmt(std::abs(v)) + "," + fmt(phase_of(v)));
        }
    }
    write_csv(path, header_comments, "t,s,re,im,mag,phase", rows);
}

void write_field_pgm(const ComplexField& field, const std::string& path, bool db) {
    double peak = 0.0;
    for (const cplx& v : field.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) peak = 1.0;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw validation_error(path + ": cannot open for writing");
    os << "P5\n" << field.grid.n_t << " " << field.n_scales() << "\n255\n";
    for (std::size_t si = 0; si < field.n_scales(); ++si) {
        for (std::size_t j = 0; j < field.grid.n_t; ++j) {
            double r = std::abs(field.at(si, j)) / peak;
            double level;
            if (db) {
                double dbv = r > 0.0 ? 20.0 * std::log10(r) : -80.0;
                level = (std::max(dbv, -80.0) + 80.0) / 80.0;
            } else {
                level = r;
            }
            os.put(static_cast<char>(std::lround(255.0 * level)));
        }
    }
}

Signal read_signal_csv(const std::string& path) {
    CsvReader rd(path);
    std::vector<std::string> f;
    if (!rd.next(f) || f.size() != 2 || f[0] != "t" || f[1] != "y")
        csv_fail(path, rd.line_no, "expected header 't,y'");
    std::vector<double> times, values;
    while (rd.next(f)) {
        if (f.size() != 2) csv_fail(path, rd.line_no, "expected 2 columns");
        times.push_back(parse_double(f[0], path, rd.line_no));
        values.push_back(parse_double(f[1], path, rd.line_no));
    }
    if (times.size() < 8) csv_fail(path, rd.line_no, "need at least 8 samples");
    Signal s;
    s.t0 = times.front();
    s.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(s.dt > 0.0)) csv_fail(path, rd.line_no, "times must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
        double expected = s.t0 + s.dt * static_cast<double>(i);
        if (std::abs(times[i] - expected) > 1e-6 * std::max(1.0, std::abs(expected)))
            csv_fail(path, i + 2, "non-uniform sampling");
    }
    s.samples = std::move(values);
    return s;
}

WaveletSpec read_wavelet_csv(const std::string& path) {
    CsvReader rd(path);
    std::vector<std::string> f;
    if (!rd.next(f) || f.size() != 3 || f[0] != "lambda" || f[1] != "re" || f[2] != "im")
        csv_fail(path, rd.line_no, "expected header 'lambda,re,im'");
    std::vector<double> lambda;
    std::vector<cplx> values;
    while (rd.next(f)) {
        if (f.size() != 3) csv_fail(path, rd.line_no, "expected 3 columns");
        lambda.push_back(parse_double(f[0], path, rd.line_no));
        values.emplace_back(parse_double(f[1], path, rd.line_no),
                            parse_double(f[2], path, rd.line_no));
    }
    return WaveletSpec::custom(std::move(lambda), std::move(values));
}

SpectralMeasure read_density_csv(const std::string& path) {
    CsvReader rd(path);
    std::vector<std::string> f;
    if (!rd.next(f) || f.size() != 2 || f[0] != "lambda" || f[1] != "density")
        csv_fail(path, rd.line_no, "expected header 'lambda,density'");
    std::vector<double> lambda, values;
    while (rd.next(f)) {
        if (f.size() != 2) csv_fail(path, rd.line_no, "expected 2 columns");
        lambda.push_back(parse_double(f[0], path, rd.line_no));
        values.push_back(parse_double(f[1], path, rd.line_no));
    }
    return SpectralMeasure::density(std::move(lambda), std::move(values));
}

void write_gamma_csv(const GammaMatrix& g, const std::string& path,
                     const std::vector<std::string>& header_comments) {
    std::vector<std::string> rows;
    for (Eigen::Index a = 0; a < g.gamma.rows(); ++a)
        for (Eigen::Index b = 0; b < g.gamma.cols(); ++b)
            rows.push_back(std::to_string(a) + "," + std::to_string(b) + "," +
                           fmt(g.gamma(a, b).real()) + "," + fmt(g.gamma(a, b).imag()) +
                           "," + fmt(g.pseudo(a, b).real()) + "," +
                           fmt(g.pseudo(a, b).imag()));
    write_csv(path, header_comments, "l,lp,re,im,pseudo_re,pseudo_im", rows);
}

void write_contours_csv(const std::vector<geometry::ContourSet>& sets,
                        const std::string& path,
                        const std::vector<std::string>& header_comments) {
    std::vector<std::string> rows;
    std::size_t pid = 0;
    for (const auto& set : sets) {
        for (const auto& pl : set.polylines) {
            std::size_t vid = 0;
            for (const auto& [t, s] : pl.pts)
                rows.push_back(std::to_string(pid) + "," + std::to_string(vid++) + "," +
                               fmt(t) + "," + fmt(s));
            ++pid;
        }
    }
    write_csv(path, header_comments, "polyline_id,vertex_id,t,s", rows);
}

void write_ridge_csv(const geometry::RidgeCurve& r, const std::string& path,
                     const std::vector<std::string>& header_comments) {
    std::vector<std::string> rows;
    for (std::size_t j = 0; j < r.times.size(); ++j)
        rows.push_back(fmt(r.times[j]) + "," + fmt(r.s_f[j]) + "," +
                       std::to_string(static_cast<int>(r.is_boundary[j])));
    write_csv(path, header_comments, "t,s_f,boundary_flag", rows);
}

std::map<std::string, std::string> read_manifest(
    const std::string& path, const std::vector<std::string>& allowed) {
    std::ifstream is(path);
    if (!is) throw validation_error(path + ": cannot open");
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": expected key=value");
        std::string key = line.substr(0, eq);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw validation_error(path + ":" + std::to_string(line_no) +
                                   ": unknown key '" + key + "'");
        out[key] = line.substr(eq + 1);
    }
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::string& header, const std::vector<std::string>& rows) {
    std::ofstream os(path);
    if (!os) throw validation_error(path + ": cannot open for writing");
    for (const auto& c : comments) os << "# " << c << "\n";
    os << header << "\n";
    for (const auto& r : rows) os << r << "\n";
    if (!os) throw validation_error(path + ": write failed");
}

}  // namespace io
}  // namespace awt
