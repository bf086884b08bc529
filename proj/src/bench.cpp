#include "astower/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "astower/embedding.hpp"
#include "astower/frobenius.hpp"

namespace astower {

namespace {

TowerElement random_element(const TowerDescriptor& t, std::uint32_t level,
                            std::mt19937_64& rng) {
    std::vector<word> c(t.level_size(level));
    for (word& w : c) w = rng() % t.p();
    return make_element(t, level, std::move(c));
}

std::uint64_t time_median(const std::function<void()>& f, int reps) {
    std::vector<std::uint64_t> times;
    times.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(
            std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

} // namespace

std::vector<BenchRecord> run_bench(const TowerDescriptor& t, const std::vector<std::string>& ops,
                                   std::uint32_t level_lo, std::uint32_t level_hi, int reps,
                                   std::uint64_t seed, const GeneralTower* general) {
    if (reps < 3) throw std::invalid_argument("run_bench: repetitions must be >= 3");
    if (level_lo == 0 || level_hi > t.height() || level_lo > level_hi)
        throw std::invalid_argument("run_bench: bad level range");
    for (const std::string& op : ops)
        if (std::find(kBenchOps.begin(), kBenchOps.end(), op) == kBenchOps.end())
            throw std::invalid_argument("run_bench: unknown op '" + op + "'");

    std::mt19937_64 rng(seed);
    std::vector<BenchRecord> out;
    for (std::uint32_t lvl = level_lo; lvl <= level_hi; ++lvl) {
        std::size_t sz = t.level_size(lvl);
        TowerElement a = random_element(t, lvl, rng);
        TowerElement b = random_element(t, lvl, rng);
        if (is_zero(b)) b = one_element(t, lvl);
        BivariateElement apd = push_down(a);

        for (const std::string& op : ops) {
            std::function<void()> f;
            if (op == "push_down") {
                f = [&] { volatile bool sink = push_down(a).parts.empty(); (void)sink; };
            } else if (op == "lift_up") {
                f = [&] { volatile bool sink = is_zero(lift_up(apd)); (void)sink; };
            } else if (op == "elem_mul") {
                f = [&] { volatile bool sink = is_zero(mul(a, b)); (void)sink; };
            } else if (op == "elem_inv") {
                f = [&] { volatile bool sink = is_zero(inv(b)); (void)sink; };
            } else if (op == "iter_frobenius") {
                word n = t.d;
                for (std::uint32_t h = 1; h < lvl; ++h) n *= t.p();
                f = [&, n] { volatile bool sink = is_zero(frobenius(a, n)); (void)sink; };
            } else if (op == "pseudotrace") {
                std::size_t j = lvl - 1;
                f = [&, j] { volatile bool sink = is_zero(pseudotrace(a, j)); (void)sink; };
            } else if (op == "apply_iso" || op == "apply_inverse") {
                if (!general || !general->images_ready() || general->height() < lvl)
                    throw std::invalid_argument(
                        "run_bench: sigma ops need a general tower with images up to the level");
                if (op == "apply_iso") {
                    GeneralElement v = apply_inverse(*general, a);
                    f = [&, v] {
                        volatile bool sink = is_zero(apply_isomorphism(*general, v));
                        (void)sink;
                    };
                } else {
                    f = [&] {
                        volatile bool sink = apply_inverse(*general, a).coeffs.empty();
                        (void)sink;
                    };
                }
            }
            out.push_back({op, lvl, sz, time_median(f, reps), reps});
        }
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << "op,level,size,ns,median_of\n";
    for (const BenchRecord& r : records)
        os << r.op << ',' << r.level << ',' << r.size << ',' << r.ns << ',' << r.median_of
           << '\n';
}

double loglog_slope(const std::vector<BenchRecord>& records, const std::string& op) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const BenchRecord& r : records) {
        if (r.op != op || r.ns == 0) continue;
        double x = std::log(double(r.size)), y = std::log(double(r.ns));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("loglog_slope: need at least two records for " + op);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace astower
