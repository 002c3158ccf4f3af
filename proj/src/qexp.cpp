#include "gflab/qexp.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>

namespace gflab {

namespace {

std::mutex cache_mutex;
std::map<std::string, QSeries> cache;

std::string cache_dir() {
    const char* d = std::getenv("GFLAB_CACHE_DIR");
    return d ? std::string(d) : std::string();
}

using Generator = QSeries (*)(long);

// memoized lookup; a cached series at lower order is regenerated and the
// prefix-stability of the extension is checked, not assumed
QSeries cached(const std::string& name, long order, Generator gen) {
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(name);
        if (it != cache.end() && it->second.order() >= order)
            return it->second.truncated(order);
    }
    std::string dir = cache_dir();
    if (!dir.empty()) {
        auto path = std::filesystem::path(dir) / (name + ".qs");
        if (std::filesystem::exists(path)) {
            QSeries s = load_series_file(path.string());
            if (s.order() >= order) {
                std::lock_guard<std::mutex> lk(cache_mutex);
                cache.insert_or_assign(name, s);
                return s.truncated(order);
            }
        }
    }
    QSeries s = gen(order);
    {
        std::lock_guard<std::mutex> lk(cache_mutex);
        auto it = cache.find(name);
        if (it != cache.end()) {
            if (!agree_to_common_order(it->second, s))
                throw std::logic_error("series cache: regeneration changed existing coefficients of " + name);
            if (it->second.order() >= s.order()) return it->second.truncated(order);
        }
        cache.insert_or_assign(name, s);
    }
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (!ec) save_series_file((std::filesystem::path(dir) / (name + ".qs")).string(), s);
    }
    return s;
}

QSeries gen_sigma(long order, int k) {
    std::vector<Rat> v(order + 1);
    // sieve over divisors: d contributes d^k to every multiple of d
    for (long d = 1; d <= order; ++d) {
        Int dk = pow_int(Int(d), k);
        for (long n = d; n <= order; n += d) v[n] += Rat(dk);
    }
    return QSeries(0, order, std::move(v));
}

QSeries gen_s1(long order) { return gen_sigma(order, 1); }
QSeries gen_s3(long order) { return gen_sigma(order, 3); }
QSeries gen_s5(long order) { return gen_sigma(order, 5); }

QSeries gen_E2(long order) { return QSeries::constant(1, order) + Rat(-24) * cached("s1", order, gen_s1); }
QSeries gen_E4(long order) { return QSeries::constant(1, order) + Rat(240) * cached("s3", order, gen_s3); }
QSeries gen_E6(long order) { return QSeries::constant(1, order) + Rat(-504) * cached("s5", order, gen_s5); }

QSeries gen_delta(long order) {
    QSeries e4 = cached("E4", order, gen_E4);
    QSeries e6 = cached("E6", order, gen_E6);
    return Rat(1, 1728) * (e4 * e4 * e4 - e6 * e6);
}

QSeries gen_inv_j(long order) {
    QSeries e4 = cached("E4", order + 1, gen_E4);
    QSeries d = cached("delta", order + 1, gen_delta);
    QSeries e4c = e4 * e4 * e4;
    // delta/E4^3: valuation 1, certified one past the requested order
    return (d * reciprocal(e4c)).truncated(order);
}

QSeries gen_j(long order) {
    return reciprocal(cached("inv_j", order + 2, gen_inv_j)).truncated(order);
}

QSeries gen_h(long order) {
    QSeries e4 = cached("E4", order, gen_E4);
    QSeries e6 = cached("E6", order, gen_E6);
    return Rat(1, 4) * (e6 * reciprocal(e4) - QSeries::constant(1, order));
}

QSeries gen_alpha(long order) {
    QSeries h = cached("h", order, gen_h);
    QSeries a = sqrt_one(QSeries::constant(1, order) + Rat(4) * h);
    if (!a.is_integral()) throw integrality_violation("alpha");
    return a;
}

QSeries gen_theta(long order) {
    QSeries t = comp_inverse(cached("inv_j", order, gen_inv_j).normalized());
    if (!t.is_integral()) throw integrality_violation("theta");
    return t;
}

QSeries gen_F(long order) {
    QSeries f = compose(cached("alpha", order, gen_alpha), cached("theta", order, gen_theta));
    if (!f.is_integral()) throw integrality_violation("F");
    return f;
}

QSeries gen_a4(long order) {
    return Rat(-5) * cached("s3", order, gen_s3);
}

QSeries gen_a6(long order) {
    QSeries s3 = cached("s3", order, gen_s3);
    QSeries s5 = cached("s5", order, gen_s5);
    QSeries a6 = Rat(-1, 12) * (Rat(5) * s3 + Rat(7) * s5);
    if (!a6.is_integral()) throw integrality_violation("a6_tate");
    return a6;
}

}  // namespace

QSeries sigma_series(int k, long order) {
    if (order < 1) throw std::invalid_argument("sigma_series: order >= 1 required");
    switch (k) {
        case 1: return cached("s1", order, gen_s1);
        case 3: return cached("s3", order, gen_s3);
        case 5: return cached("s5", order, gen_s5);
        default: throw unsupported_exponent();
    }
}

QSeries eisenstein(Eisenstein which, long order) {
    if (order < 0) throw std::invalid_argument("eisenstein: order >= 0 required");
    long ord = std::max(order, 1L);
    QSeries s = which == Eisenstein::E2   ? cached("E2", ord, gen_E2)
                : which == Eisenstein::E4 ? cached("E4", ord, gen_E4)
                                          : cached("E6", ord, gen_E6);
    return s.truncated(order);
}

std::pair<QSeries, QSeries> tate_coefficients(long order) {
    if (order < 1) throw std::invalid_argument("tate_coefficients: order >= 1 required");
    return {cached("a4_tate", order, gen_a4), cached("a6_tate", order, gen_a6)};
}

QSeries delta_series(long order) { return cached("delta", order, gen_delta); }
QSeries j_series(long order) { return cached("j", order, gen_j); }
QSeries inv_j_series(long order) { return cached("inv_j", order, gen_inv_j); }
QSeries h_series(long order) { return cached("h", order, gen_h); }
QSeries alpha_series(long order) { return cached("alpha", order, gen_alpha); }
QSeries theta_series(long order) { return cached("theta", order, gen_theta); }
QSeries F_series(long order) { return cached("F", order, gen_F); }

bool is_known_series(const std::string& name) {
    static const char* names[] = {"s1", "s3", "s5", "E2", "E4", "E6", "a4_tate", "a6_tate",
                                  "delta", "j", "inv_j", "h", "alpha", "theta", "F"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

QSeries named_series(const std::string& name, long order) {
    if (name == "s1" || name == "s3" || name == "s5") return sigma_series(name[1] - '0', order);
    if (name == "E2") return eisenstein(Eisenstein::E2, order);
    if (name == "E4") return eisenstein(Eisenstein::E4, order);
    if (name == "E6") return eisenstein(Eisenstein::E6, order);
    if (name == "a4_tate") return tate_coefficients(order).first;
    if (name == "a6_tate") return tate_coefficients(order).second;
    if (name == "delta") return delta_series(order);
    if (name == "j") return j_series(order);
    if (name == "inv_j") return inv_j_series(order);
    if (name == "h") return h_series(order);
    if (name == "alpha") return alpha_series(order);
    if (name == "theta") return theta_series(order);
    if (name == "F") return F_series(order);
    throw std::invalid_argument("unknown series name: " + name);
}

double growth_estimate(const QSeries& s) {
    double best = 0.0;
    for (long n = 1; n <= s.order(); ++n) {
        const Rat& c = s.coeff(n);
        if (c == 0) continue;
        // log|c| via mpz bit size, accurate enough for a growth profile
        double ln = std::log(std::abs(c.get_d()));
        if (!std::isfinite(ln)) {
            ln = (mpz_sizeinbase(c.get_num_mpz_t(), 2) - mpz_sizeinbase(c.get_den_mpz_t(), 2)) * std::log(2.0);
        }
        best = std::max(best, std::exp(ln / n));
    }
    return best;
}

void clear_series_cache() {
    std::lock_guard<std::mutex> lk(cache_mutex);
    cache.clear();
}

}  // namespace gflab
