#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>

#include "gflab/qexp.hpp"

using namespace gflab;

namespace {
// divisor-sum oracle, straight from the definition
Int sigma_oracle(int k, long n) {
    Int acc = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) acc += pow_int(Int(d), k);
    return acc;
}
}  // namespace

TEST_CASE("sigma series against divisor-sum oracle") {
    for (int k : {1, 3, 5}) {
        QSeries s = sigma_series(k, 50);
        CHECK(s.coeff(0) == 0);
        CHECK(s.coeff(1) == 1);
        for (long n = 1; n <= 50; ++n) CHECK(s.coeff(n) == Rat(sigma_oracle(k, n)));
    }
    CHECK(sigma_series(3, 3).coeff(2) == 9);
    CHECK(sigma_series(3, 3).coeff(3) == 28);
    CHECK(sigma_series(5, 2).coeff(2) == 33);
    CHECK_THROWS_AS(sigma_series(2, 10), unsupported_exponent);
}

TEST_CASE("Eisenstein expansions") {
    QSeries e4 = eisenstein(Eisenstein::E4, 2);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    CHECK(e4.coeff(2) == 2160);
    QSeries e6 = eisenstein(Eisenstein::E6, 2);
    CHECK(e6.coeff(0) == 1);
    CHECK(e6.coeff(1) == -504);
    CHECK(e6.coeff(2) == -16632);
    QSeries e2 = eisenstein(Eisenstein::E2, 3);
    CHECK(e2.coeff(0) == 1);
    CHECK(e2.coeff(1) == -24);
    CHECK(e2.coeff(2) == -72);
    CHECK(e2.coeff(3) == -96);
}

TEST_CASE("Tate coefficients") {
    auto [a4, a6] = tate_coefficients(3);
    CHECK(a4.coeff(1) == -5);
    CHECK(a4.coeff(2) == -45);
    CHECK(a4.coeff(3) == -140);
    CHECK(a6.coeff(1) == -1);
    CHECK(a6.coeff(2) == -23);
    CHECK(a6.coeff(3) == -154);
    CHECK(a4.is_integral());
    CHECK(a6.is_integral());
}

TEST_CASE("j and 1/j") {
    QSeries j = j_series(1);
    CHECK(j.offset() == -1);
    CHECK(j.coeff(-1) == 1);
    CHECK(j.coeff(0) == 744);
    CHECK(j.coeff(1) == 196884);
    CHECK(j.is_integral());

    QSeries invj = inv_j_series(3);
    CHECK(invj.coeff(1) == 1);
    CHECK(invj.coeff(2) == -744);
    CHECK(invj.coeff(3) == 356652);
    CHECK(invj.is_integral());

    QSeries prod = j_series(40) * inv_j_series(40);
    CHECK(agree_to_common_order(prod, QSeries::constant(1, prod.order())));
}

TEST_CASE("alpha: the square-root branch with value 1, and the displayed-coefficient verdict") {
    // two independent routes must agree: sqrt of E6/E4, and the binomial
    // square root composed with h
    QSeries a = alpha_series(40);
    CHECK(a.coeff(0) == 1);
    CHECK(a.coeff(1) == -372);   // not +372: the sign is forced by E6/E4 = 1 - 744q + ...
    CHECK(a.coeff(2) == 10692);  // not 127692
    CHECK(a.is_integral());

    QSeries h = h_series(40);
    CHECK(h.coeff(1) == -186);
    CHECK(h.coeff(2) == 39942);
    std::vector<Rat> bin(41);
    bin[0] = 1;
    for (long n = 1; n <= 40; ++n) {
        Rat c(2 * binomial(2 * n - 2, n - 1), Int(n));
        c.canonicalize();
        bin[n] = (n % 2 == 1) ? c : -c;
    }
    QSeries sqrt14(0, 40, bin);
    CHECK(agree_to_common_order(compose(sqrt14, h), a));

    QSeries e4 = eisenstein(Eisenstein::E4, 40);
    QSeries e6 = eisenstein(Eisenstein::E6, 40);
    CHECK(agree_to_common_order(a * a * e4, e6));
}

TEST_CASE("theta and F") {
    QSeries th = theta_series(4);
    CHECK(th.coeff(1) == 1);
    CHECK(th.coeff(2) == 744);
    CHECK(th.coeff(3) == 750420);
    CHECK(th.coeff(4) == 872769632);
    CHECK(th.is_integral());

    QSeries f = F_series(2);
    CHECK(f.coeff(0) == 1);
    CHECK(f.coeff(1) == -372);
    CHECK(f.coeff(2) == -266076);
    CHECK(f.is_integral());
}

TEST_CASE("defining identities to order 120") {
    const long N = 120;
    QSeries e4 = eisenstein(Eisenstein::E4, N);
    QSeries e6 = eisenstein(Eisenstein::E6, N);
    QSeries a = alpha_series(N);
    QSeries th = theta_series(N);
    QSeries invj = inv_j_series(N);
    QSeries f = F_series(N);
    QSeries d = delta_series(N);

    CHECK(agree_to_common_order(a * a * e4, e6));
    CHECK(agree_to_common_order(compose(invj, th), QSeries::x(N)));
    CHECK(agree_to_common_order(compose(th, invj.normalized()), QSeries::x(N)));
    CHECK(agree_to_common_order(f, compose(a, th)));
    CHECK(agree_to_common_order(Rat(1728) * d, e4 * e4 * e4 - e6 * e6));

    auto [a4, a6] = tate_coefficients(N);
    CHECK(agree_to_common_order(a4, Rat(-5) * sigma_series(3, N)));
    CHECK(agree_to_common_order(Rat(12) * a6, Rat(-1) * (Rat(5) * sigma_series(3, N) + Rat(7) * sigma_series(5, N))));
}

TEST_CASE("regenerating at higher order extends prefixes") {
    QSeries f1 = F_series(20);
    QSeries f2 = F_series(45);
    CHECK(agree_to_common_order(f1, f2));
    QSeries t1 = theta_series(30);
    QSeries t2 = theta_series(15);
    CHECK(agree_to_common_order(t1, t2));
}

TEST_CASE("disk cache layer round trips through GFLAB_CACHE_DIR") {
    std::string dir = "/tmp/gflab_cache_test_" + std::to_string(::getpid());
    ::setenv("GFLAB_CACHE_DIR", dir.c_str(), 1);
    clear_series_cache();
    QSeries a = F_series(25);
    clear_series_cache();  // force the reload path
    QSeries b = F_series(25);
    ::unsetenv("GFLAB_CACHE_DIR");
    clear_series_cache();
    CHECK(agree_to_common_order(a, b));
    QSeries disk = load_series_file(dir + "/F.qs");
    CHECK(agree_to_common_order(disk, a));
    std::filesystem::remove_all(dir);
}

TEST_CASE("growth profile of F is geometric") {
    double g = growth_estimate(F_series(200));
    // |F_n|^(1/n) climbs toward the reciprocal of the convergence radius (1728)
    CHECK(g > 1000.0);
    CHECK(g < 1728.0);
}
