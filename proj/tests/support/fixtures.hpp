#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "loadstab/loadstab.hpp"

namespace loadstab::synth {

namespace fs = std::filesystem;

/// Fresh empty directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("loadstab_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Half-hourly raw file whose hourly sums equal `hourly`; each hour is split 45/55.
/// Rows listed in `drop` (half-hour indices) are left out.
inline void write_halfhourly_csv(const fs::path& p, const HourlyLoadSeries& hourly,
                                 const std::vector<std::size_t>& drop = {}) {
    std::ofstream out(p, std::ios::binary);
    out << "datetime,mw\n";
    const CivilTime start{hourly.first_day()};
    for (std::size_t i = 0; i < hourly.size(); ++i) {
        for (int half = 0; half < 2; ++half) {
            const std::size_t k = 2 * i + static_cast<std::size_t>(half);
            if (std::find(drop.begin(), drop.end(), k) != drop.end()) {
                continue;
            }
            const double v = hourly[i] * (half == 0 ? 0.45 : 0.55);
            out << format_civil_time(start + std::chrono::minutes{30 * static_cast<int>(k + 1)}) << ','
                << csv::exact(v) << '\n';
        }
    }
}

/// GDP vintage file with one report year, GDP rising linearly.
inline void write_gdp_csv(const fs::path& p, int report, int from, int to) {
    std::ofstream out(p, std::ios::binary);
    out << "report_year,target_year,gdp,flag\n";
    for (int y = from; y <= to; ++y) {
        out << report << ',' << y << ',' << 200 + 15 * (y - from) << ',' << (y < report ? "actual" : "forecast")
            << '\n';
    }
}

/// Runs the CLI with string arguments, capturing stderr.
inline int run_cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::vector<const char*> argv{"loadstab"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), err);
    if (err_text) {
        *err_text = err.str();
    }
    return status;
}

}  // namespace loadstab::synth
