#include "ttb/words.hpp"

#include <array>
#include <limits>

namespace ttb::words {

std::string least_rotation(const std::string& w) {
    // Booth's algorithm
    if (w.empty()) return w;
    std::string s = w + w;
    std::size_t n = s.size();
    std::vector<long> f(n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
        char sj = s[j];
        long i = f[j - k - 1];
        while (i != -1 && sj != s[k + i + 1]) {
            if (sj < s[k + i + 1]) k = j - i - 1;
            i = f[i];
        }
        if (sj != s[k + i + 1]) {
            if (sj < s[k + i + 1]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return s.substr(k, w.size());
}

std::vector<std::string> pair_code(const std::string& letters, bool cyclic) {
    if (letters.size() < 2) throw std::invalid_argument("pair code needs at least 2 letters");
    std::vector<std::string> out;
    std::size_t n = letters.size();
    std::size_t count = cyclic ? n : n - 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        char x = letters[i], y = letters[(i + 1) % n];
        out.push_back(std::string{x, y});
    }
    return out;
}

std::string sign_code(const std::vector<std::string>& pairs) {
    std::string out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (p == "ab" || p == "bc" || p == "ca")
            out.push_back('+');
        else if (p == "ba" || p == "cb" || p == "ac")
            out.push_back('-');
        else
            throw std::invalid_argument("sign map undefined for pair " + p);
    }
    return out;
}

int sign_sum(const std::vector<std::string>& pairs) {
    int s = 0;
    for (char c : sign_code(pairs)) s += (c == '+') ? 1 : -1;
    return s;
}

int winding(const std::vector<std::string>& pairs, int n) {
    if (n < 3) throw std::invalid_argument("winding needs n >= 3");
    int w = 0;
    for (const auto& p : pairs) {
        if (p.size() != 2 || p[0] == p[1]) throw std::invalid_argument("bad pair " + p);
        int i = p[0] - 'a', j = p[1] - 'a';
        if ((i + 1) % n == j) ++w;
        else if ((j + 1) % n == i) --w;
    }
    return w;
}

namespace {

// smallest d dividing n with rotate(w, d) == w
std::size_t minimal_cyclic_period(const std::string& w) {
    std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = w[i] == w[(i + d) % n];
        if (ok) return d;
    }
    return n;
}

} // namespace

SquareOddResult square_odd_check(const std::string& w) {
    SquareOddResult r;
    if (w.empty()) {
        r.reason = "empty word";
        return r;
    }
    std::size_t n = w.size();
    if (n % 2) {
        r.reason = "odd length";
        return r;
    }
    std::size_t p = minimal_cyclic_period(w);
    if (2 * p != n) {
        r.reason = "length is not twice the smallest period";
        return r;
    }
    if (p % 2 == 0) {
        r.reason = "even half";
        return r;
    }
    r.pass = true;
    r.s = w.substr(0, p);
    return r;
}

namespace {

struct CondRule {
    char letter;
    std::string block1, block2; // applicable unless context equals ban1/ban2
    char ban1, ban2;
};

// blocks as printed with the renormalization step; context bans follow the
// "precedent symbol was not X" clauses
CondRule sigma_rule(int j) {
    switch (j) {
        case 1: return {'a', "bca", "cba", 'b', 'c'};
        case 2: return {'b', "acb", "cab", 'a', 'c'};
        case 3: return {'c', "bac", "abc", 'b', 'a'};
        default: throw std::invalid_argument("sigma index must be 1, 2 or 3");
    }
}

std::string apply_conditional(const CondRule& rule,
                              const std::map<char, std::string>& plain,
                              const std::string& w, bool cyclic, char left_context) {
    std::string out;
    out.reserve(w.size() * 3);
    for (std::size_t i = 0; i < w.size(); ++i) {
        char ch = w[i];
        if (ch != rule.letter) {
            auto it = plain.find(ch);
            if (it == plain.end()) throw std::invalid_argument(std::string("letter out of alphabet: ") + ch);
            out += it->second;
            continue;
        }
        char ctx;
        if (i > 0)
            ctx = w[i - 1];
        else if (cyclic)
            ctx = w.back();
        else if (left_context)
            ctx = left_context;
        else
            throw ambiguous_context("leading conditional letter without context");
        bool b1 = ctx != rule.ban1, b2 = ctx != rule.ban2;
        if (b1 == b2)
            throw ambiguous_context(std::string("context '") + ctx + "' leaves the substitution of '" +
                                    rule.letter + "' " + (b1 ? "ambiguous" : "undefined"));
        out += b1 ? rule.block1 : rule.block2;
    }
    return out;
}

} // namespace

std::string sigma_apply(int j, const std::string& w, bool cyclic, char left_context) {
    CondRule rule = sigma_rule(j);
    std::map<char, std::string> plain;
    for (char ch : {'a', 'b', 'c'})
        if (ch != rule.letter) plain[ch] = std::string(1, ch);
    return apply_conditional(rule, plain, w, cyclic, left_context);
}

std::string varsigma_R(const std::string& w, bool cyclic, char left_context) {
    // upsilon_rel after sigma_3: a->b, b->c, c-> cba | bca by context.
    // The bans stay those of sigma_3 (context letters are source letters).
    CondRule rule{'c', "cba", "bca", 'b', 'a'};
    std::map<char, std::string> plain{{'a', "b"}, {'b', "c"}};
    return apply_conditional(rule, plain, w, cyclic, left_context);
}

std::string upsilon_rel(const std::string& w) {
    std::string out = w;
    for (char& ch : out) {
        switch (ch) {
            case 'a': ch = 'b'; break;
            case 'b': ch = 'c'; break;
            case 'c': ch = 'a'; break;
            default: throw std::invalid_argument("letter out of alphabet");
        }
    }
    return out;
}

std::string upsilon_fac(const std::string& w) {
    if (w.size() % 2) throw std::invalid_argument("factorization needs even length");
    std::string out;
    out.reserve(w.size() / 2);
    for (std::size_t i = 0; i < w.size(); i += 2) {
        char x = w[i], y = w[i + 1];
        if (x == y) throw std::invalid_argument("equal-letter pair in factorization");
        bool a = x == 'a' || y == 'a', b = x == 'b' || y == 'b', c = x == 'c' || y == 'c';
        if (a && b) out.push_back('3');
        else if (a && c) out.push_back('2');
        else if (b && c) out.push_back('1');
        else throw std::invalid_argument("letter out of alphabet");
    }
    return out;
}

namespace {

std::string digit_sub(const std::array<std::string, 3>& images, const std::string& digits) {
    std::string out;
    for (char d : digits) {
        if (d < '1' || d > '3') throw std::invalid_argument("digit out of alphabet");
        out += images[d - '1'];
    }
    return out;
}

} // namespace

std::string factorized_sigma_apply(int j, const std::string& digits) {
    switch (j) {
        case 0: return sigma_R_apply(digits);
        case 1: return digit_sub({"1", "12", "13"}, digits);
        case 2: return digit_sub({"21", "2", "23"}, digits);
        case 3: return digit_sub({"31", "32", "3"}, digits);
        default: throw std::invalid_argument("factorized sigma index must be 0..3");
    }
}

std::string sigma_R_apply(const std::string& digits) { return digit_sub({"12", "13", "1"}, digits); }

std::string upsilon_rel_digits(const std::string& digits) { return digit_sub({"2", "3", "1"}, digits); }

std::string w_R_prefix(std::size_t n) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::string w = "1";
    while (w.size() < n) w = sigma_R_apply(w);
    w.resize(n);
    return w;
}

long long tribonacci(int n) {
    if (n < 1) throw std::invalid_argument("tribonacci index must be >= 1");
    if (n > 70) throw std::overflow_error("tribonacci index too large for 64-bit");
    long long t1 = 1, t2 = 1, t3 = 1;
    if (n <= 3) return 1;
    for (int i = 4; i <= n; ++i) {
        long long t = t1 + t2 + t3;
        t1 = t2;
        t2 = t3;
        t3 = t;
    }
    return t3;
}

std::vector<std::string> generate_s_words(int j_max) {
    if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
    std::vector<std::string> s;
    s.reserve(j_max + 3);
    s.push_back("a");
    s.push_back("b");
    s.push_back("c");
    s.push_back("cba");
    for (int j = 1; j < j_max; ++j) {
        const std::string& cur = s.back();
        std::string img = varsigma_R(cur, /*cyclic=*/true);
        if (cur[0] == 'c') img = img.substr(2) + img.substr(0, 2); // shift rule
        s.push_back(std::move(img));
    }
    return s;
}

} // namespace ttb::words
