#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace testing_support {

// Portable draws: the standard distributions differ between library vendors.
inline double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double normal(std::mt19937_64& rng) {
    double u1 = uniform(rng);
    while (u1 <= 0.0) u1 = uniform(rng);
    const double u2 = uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::vector<double> normals(std::mt19937_64& rng, std::size_t n, double mu = 0.0, double sd = 1.0) {
    std::vector<double> out(n);
    for (auto& v : out) v = mu + sd * normal(rng);
    return out;
}

inline std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> out(n);
    double level = 0.0;
    for (auto& v : out) v = level += normal(rng);
    return out;
}

inline std::vector<double> ar1(std::mt19937_64& rng, std::size_t n, double phi, double c = 0.0, double sd = 1.0,
                               std::size_t burn_in = 100) {
    std::vector<double> out;
    out.reserve(n);
    double y = c / (1.0 - phi);
    for (std::size_t t = 0; t < n + burn_in; ++t) {
        y = c + phi * y + sd * normal(rng);
        if (t >= burn_in) out.push_back(y);
    }
    return out;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("issuecast-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace testing_support
