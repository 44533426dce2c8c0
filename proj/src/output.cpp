#include "sirfb/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sirfb/errors.hpp"

namespace sirfb {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
}

double lerp_uniform(const std::vector<double>& vals, double spacing, double x) {
    const std::size_t N = vals.size() - 1;
    if (x <= 0) return vals[0];
    const double pos = x / spacing;
    const auto j = static_cast<std::size_t>(pos);
    if (j >= N) return vals[N];
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * vals[j] + w * vals[j + 1];
}

} // namespace

std::string series_csv(const std::vector<Frame>& series) {
    std::ostringstream os;
    os << "t,h,dhdt,sup_S,sup_I,sup_R,mass_I,balance_residual\n";
    for (const Frame& f : series) {
        os << fmt17(f.t) << ',' << fmt17(f.h) << ',' << fmt17(f.dhdt) << ','
           << fmt17(f.sup_S) << ',' << fmt17(f.sup_I) << ',' << fmt17(f.sup_R) << ','
           << fmt17(f.mass_I) << ',' << fmt17(f.balance_residual) << '\n';
    }
    return os.str();
}

void write_series_csv(const std::string& path, const std::vector<Frame>& series) {
    write_file(path, series_csv(series));
}

std::string profile_csv(const ProfileFrame& frame, const GridSpec& grid) {
    std::ostringstream os;
    os << "r,S,I,R\n";
    const bool fixed_domain = frame.v_comp.size() == frame.S_phys.size();
    const double ds = grid.ds();
    for (int i = 0; i <= grid.N_L; ++i) {
        const double r = i * grid.dr();
        double iv = 0.0, rv = 0.0;
        if (fixed_domain) {
            iv = frame.v_comp[i];
            rv = frame.w_comp[i];
        } else if (r < frame.h) {
            const double s = grid.h0 * r / frame.h;
            iv = lerp_uniform(frame.v_comp, ds, s);
            rv = lerp_uniform(frame.w_comp, ds, s);
        }
        os << fmt17(r) << ',' << fmt17(frame.S_phys[i]) << ',' << fmt17(iv) << ','
           << fmt17(rv) << '\n';
    }
    return os.str();
}

void write_profile_csvs(const std::string& dir,
                        const std::vector<ProfileFrame>& profiles,
                        const GridSpec& grid) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "profile_%06zu.csv", k);
        write_file((std::filesystem::path(dir) / name).string(),
                   profile_csv(profiles[k], grid));
    }
}

std::string svg_chart(const std::vector<Frame>& series) {
    const int W = 720, H = 360, ML = 60, MR = 20, MT = 20, MB = 40;
    double t_max = 1, h_max = 1, i_max = 1;
    for (const Frame& f : series) {
        t_max = std::max(t_max, f.t);
        h_max = std::max(h_max, f.h);
        i_max = std::max(i_max, f.sup_I);
    }
    const auto x_of = [&](double t) { return ML + (W - ML - MR) * t / t_max; };
    const auto polyline = [&](auto value_of, double vmax, const char* color) {
        std::ostringstream os;
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (const Frame& f : series) {
            const double y = H - MB - (H - MT - MB) * value_of(f) / vmax;
            os << x_of(f.t) << ',' << y << ' ';
        }
        os << "\"/>\n";
        return os.str();
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
       << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
       << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n"
       << polyline([](const Frame& f) { return f.h; }, h_max, "#1f77b4")
       << polyline([](const Frame& f) { return f.sup_I; }, i_max, "#d62728")
       << "<text x=\"" << ML << "\" y=\"" << H - 10 << "\" font-size=\"12\">t in [0, "
       << t_max << "]</text>\n"
       << "<text x=\"" << ML + 10 << "\" y=\"" << MT + 14
       << "\" font-size=\"12\" fill=\"#1f77b4\">h(t), max " << h_max << "</text>\n"
       << "<text x=\"" << ML + 10 << "\" y=\"" << MT + 30
       << "\" font-size=\"12\" fill=\"#d62728\">sup I(t), max " << i_max << "</text>\n"
       << "</svg>\n";
    return os.str();
}

void write_svg_chart(const std::string& path, const std::vector<Frame>& series) {
    write_file(path, svg_chart(series));
}

} // namespace sirfb
