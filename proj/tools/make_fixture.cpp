// Writes the bundled synthetic price pair: 43 month-start closes from
// 2020-09-01 to 2024-03-01 for a market index and one asset.
//
//   r_m(t) = 0.012 + 0.055 * z1(t)
//   r_i(t) = 0.002 + 1.00 * max(r_m, 0) + 0.82 * min(r_m, 0) + 0.035 * z2(t)
//
// z1, z2 are standard normals from Box-Muller over mt19937_64 seeded with
// kSeed; draws alternate market then asset each month. Both series start at
// 100 and prices are written with 4 decimals.
//
// Usage: make_fixture <output-dir> [seed]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace {

constexpr std::uint64_t kSeed = 20240301;
constexpr int kPrices = 43;

class Normal {
public:
    explicit Normal(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

bool write_csv(const std::filesystem::path& path,
               const std::vector<std::chrono::year_month_day>& dates,
               const std::vector<double>& prices) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (f == nullptr) return false;
    std::fputs("date,adj_close\n", f);
    for (std::size_t i = 0; i < dates.size(); ++i) {
        std::fprintf(f, "%04d-%02u-%02u,%.4f\n", static_cast<int>(dates[i].year()),
                     static_cast<unsigned>(dates[i].month()),
                     static_cast<unsigned>(dates[i].day()), prices[i]);
    }
    return std::fclose(f) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace std::chrono;
    if (argc < 2 || argc > 3) {
        std::fprintf(stderr, "usage: %s <output-dir> [seed]\n", argv[0]);
        return 1;
    }
    const std::filesystem::path dir = argv[1];
    const std::uint64_t seed = argc == 3 ? std::strtoull(argv[2], nullptr, 10) : kSeed;

    Normal z(seed);
    std::vector<year_month_day> dates;
    std::vector<double> market;
    std::vector<double> asset;
    year_month_day d = 2020y / September / 1d;
    double pm = 100.0;
    double pa = 100.0;
    for (int t = 0; t < kPrices; ++t) {
        if (t > 0) {
            const double rm = 0.012 + 0.055 * z();
            const double ri = 0.002 + 1.00 * std::max(rm, 0.0) + 0.82 * std::min(rm, 0.0) +
                              0.035 * z();
            pm *= 1.0 + rm;
            pa *= 1.0 + ri;
            d = d + months{1};
        }
        dates.push_back(d);
        market.push_back(pm);
        asset.push_back(pa);
    }

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!write_csv(dir / "synthetic_market.csv", dates, market) ||
        !write_csv(dir / "synthetic_asset.csv", dates, asset)) {
        std::fprintf(stderr, "cannot write fixture files under %s\n", dir.string().c_str());
        return 2;
    }
    return 0;
}
