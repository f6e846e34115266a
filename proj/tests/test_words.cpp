#include "ttb/words.hpp"

#include <doctest.h>

using namespace ttb::words;

TEST_CASE("cyclic words and least rotation") {
    CHECK(least_rotation("cba") == "acb");
    CHECK(cyclic_equal("abcabc", "bcabca"));
    CHECK(!cyclic_equal("abc", "acb"));
    CHECK(CyclicWord("cbacb") == CyclicWord("acbcb"));
}

TEST_CASE("pair code and sign map") {
    auto pairs = pair_code("abcabc", false);
    REQUIRE(pairs.size() == 5);
    CHECK(pairs[0] == "ab");
    CHECK(pairs[4] == "bc");
    CHECK(sign_code({"ab", "bc", "ca", "ab", "bc", "ca"}) == "++++++");
    CHECK(sign_code({"ba"}) == "-");
    CHECK(sign_code({}) == "");
    CHECK_THROWS(pair_code("a", false));
}

TEST_CASE("winding") {
    auto tour = pair_code("abcabc", true); // clockwise vertex tour
    CHECK(winding(tour, 3) == 6);
    CHECK(winding(pair_code("acbacb", true), 3) == -6);
    CHECK(winding({std::string("ac")}, 5) == 0); // non-adjacent for n = 5
    CHECK(sign_sum(tour) == 6);
}

TEST_CASE("square odd check") {
    auto r = square_odd_check("abcabc");
    CHECK(r.pass);
    CHECK(r.s == "abc");
    auto r2 = square_odd_check("abacacacbacacabacacacbacac");
    CHECK(r2.pass);
    CHECK(r2.s.size() == 13);
    CHECK(r2.s == "abacacacbacac");
    CHECK(!square_odd_check("abab").pass);
    CHECK(!square_odd_check("").pass);
    CHECK(!square_odd_check("abcab").pass);
}

TEST_CASE("sigma substitutions reproduce the printed chain") {
    // cba ->s3 bacba ->s2 cabacacba ->s1 cbcabcbacbcacbcba
    std::string w = "cba";
    w = sigma_apply(3, w, true);
    CHECK(w == "bacba");
    w = sigma_apply(2, w, true);
    CHECK(w == "cabacacba");
    w = sigma_apply(1, w, true);
    CHECK(w == "cbcabcbacbcacbcba");
    // sigma_1 fixes b and c letterwise
    CHECK(sigma_apply(1, "bcbc", true) == "bcbc");
    CHECK_THROWS_AS(sigma_apply(1, "aa", true), ambiguous_context);
}

TEST_CASE("varsigma_R on cyclic words") {
    CHECK(cyclic_equal(varsigma_R("cba", true), "cbacb"));
    CHECK(cyclic_equal(varsigma_R(varsigma_R("cba", true), true), "bcacbcbac"));
}

TEST_CASE("s-word recurrence reproduces the printed strings") {
    auto s = generate_s_words(8);
    CHECK(s_word(s, -2) == "a");
    CHECK(s_word(s, 1) == "cba");
    CHECK(s_word(s, 2) == "acbcb");
    CHECK(s_word(s, 3) == "bcbacbcac");
    CHECK(s_word(s, 4) == "cbcacbcbacbcabcba");
    CHECK(s_word(s, 5) == "acbcabcbacbcacbcbacbcabcbcacbcb");
    for (int j = 1; j <= 8; ++j)
        CHECK(long(s_word(s, j).size()) == tribonacci(j + 3));
}

TEST_CASE("tribonacci numbers") {
    long long expect[] = {1, 1, 1, 3, 5, 9, 17, 31, 57, 105};
    for (int i = 0; i < 10; ++i) CHECK(tribonacci(i + 1) == expect[i]);
    CHECK(tribonacci(20) == 46499);
    CHECK(tribonacci(4) == tribonacci(1) + tribonacci(2) + tribonacci(3));
    CHECK_THROWS(tribonacci(0));
}

TEST_CASE("factorization map") {
    CHECK(upsilon_fac("cbacba") == "123");
    CHECK(upsilon_fac("abab") == "33");
    CHECK_THROWS(upsilon_fac("aab"));
    CHECK_THROWS(upsilon_fac("aa"));
}

TEST_CASE("factorized substitutions") {
    CHECK(factorized_sigma_apply(1, "123") == "11213");
    CHECK(factorized_sigma_apply(3, "123") == "31323");
    CHECK(sigma_R_apply("123") == "12131");
    // varsigma_R^* = sigma_R
    for (char d : {'1', '2', '3'}) {
        std::string in(1, d);
        CHECK(upsilon_rel_digits(factorized_sigma_apply(3, in)) == sigma_R_apply(in));
    }
    // (sigma_1 . sigma_2 . sigma_3)^* = sigma_R^3
    std::string lhs = factorized_sigma_apply(1, factorized_sigma_apply(2, factorized_sigma_apply(3, "1")));
    CHECK(lhs == sigma_R_apply(sigma_R_apply(sigma_R_apply("1"))));
}

TEST_CASE("w_R fixed word") {
    CHECK(w_R_prefix(13) == "1213121121312");
    CHECK(sigma_R_apply(w_R_prefix(200)).substr(0, 200) == w_R_prefix(200));
    // |sigma_R^n(123)| = T_{n+4}
    std::string w = "123";
    for (int n = 1; n <= 10; ++n) {
        w = sigma_R_apply(w);
        CHECK(long(w.size()) == tribonacci(n + 4));
    }
}

TEST_CASE("commuting square: upsilon_fac . varsigma_R = sigma_R . upsilon_fac on w-words") {
    auto s = generate_s_words(9);
    for (int j = 1; j <= 8; ++j) {
        std::string wj = s_word(s, j) + s_word(s, j);
        std::string lhs = upsilon_fac(varsigma_R(wj, true));
        std::string rhs = sigma_R_apply(upsilon_fac(wj));
        CHECK(least_rotation(lhs) == least_rotation(rhs));
    }
}

TEST_CASE("flower concatenation identity") {
    auto s = generate_s_words(9);
    auto junction = [](int k) -> std::array<char, 3> {
        switch (((k % 3) + 3) % 3) {
            case 0: return {'c', 'a', 'b'};
            case 1: return {'a', 'b', 'c'};
            default: return {'b', 'c', 'a'};
        }
    };
    auto chop = [](std::string w, char suffix) {
        REQUIRE(!w.empty());
        REQUIRE(w.back() == suffix);
        w.pop_back();
        return w;
    };
    for (int k = 4; k <= 8; ++k) {
        auto [ast, star, dag] = junction(k);
        std::string s3 = s_word(s, k - 3), s2 = s_word(s, k - 2), s1 = s_word(s, k - 1), sk = s_word(s, k);
        std::string lhs = chop(s3 + s3, ast) + dag + chop(s2 + s2, star) + ast + chop(s1 + s1, dag) + star;
        std::string sq = sk + sk;
        REQUIRE(sq.size() >= s3.size());
        CHECK(sq.compare(sq.size() - s3.size(), s3.size(), s3) == 0);
        std::string mid = s3 + sq.substr(0, sq.size() - s3.size());
        CHECK(lhs == mid);
        CHECK(cyclic_equal(mid, sq));
    }
}

TEST_CASE("no doubled letters in generated codes") {
    auto s = generate_s_words(10);
    for (int j = 1; j <= 10; ++j) {
        const std::string w = s_word(s, j) + s_word(s, j);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] != w[(i + 1) % w.size()]);
    }
}
