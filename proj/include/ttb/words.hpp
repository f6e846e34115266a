#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttb::words {

// Words over {a,b,c} (letter codes) and {1,2,3} (factorized codes) are plain
// strings. Cyclic equality goes through the least rotation.

std::string least_rotation(const std::string& w);

struct CyclicWord {
    std::string raw;
    std::string canon;

    CyclicWord() = default;
    explicit CyclicWord(std::string s) : raw(std::move(s)), canon(least_rotation(raw)) {}
    bool operator==(const CyclicWord& o) const { return canon == o.canon; }
    bool operator!=(const CyclicWord& o) const { return canon != o.canon; }
    std::size_t size() const { return raw.size(); }
};

inline bool cyclic_equal(const std::string& u, const std::string& v) {
    return u.size() == v.size() && least_rotation(u) == least_rotation(v);
}

// accelerated code: consecutive pairs w_k w_{k+1}; wraps around when cyclic
std::vector<std::string> pair_code(const std::string& letters, bool cyclic);

// sign map on the pair alphabet: ab,bc,ca -> '+'; ba,cb,ac -> '-'
std::string sign_code(const std::vector<std::string>& pairs);
int sign_sum(const std::vector<std::string>& pairs);

// winding of a pair word over an n-letter cyclic alphabet a_1..a_n
int winding(const std::vector<std::string>& pairs, int n);

struct SquareOddResult {
    bool pass{false};
    std::string s;      // the odd half-word when pass
    std::string reason; // when fail
};

// does the cyclic word equal s^2 with s its smallest period, |s| odd?
SquareOddResult square_odd_check(const std::string& w);

struct ambiguous_context : std::domain_error {
    explicit ambiguous_context(const std::string& m) : std::domain_error(m) {}
};

// Context-dependent substitutions attached to one renormalization step.
// The conditional letter expands into a 3-letter block picked by the
// letter preceding the insertion point; blocks end with their source
// letter, so that context equals the previous source letter. Cyclic words
// wrap the context around; plain strings take an optional left context and
// reject a leading conditional letter without one.
std::string sigma_apply(int j, const std::string& w, bool cyclic, char left_context = 0);

// varsigma_R = relabel(a->b,b->c,c->a) after sigma_3
std::string varsigma_R(const std::string& w, bool cyclic, char left_context = 0);

std::string upsilon_rel(const std::string& w);

// pairwise factorization of an even-length word: ab/ba->3, ac/ca->2, cb/bc->1
std::string upsilon_fac(const std::string& w);

// factorized substitutions on {1,2,3}: j in 1..3 gives sigma_j^*,
// j = 0 gives varsigma_R^* = sigma_R
std::string factorized_sigma_apply(int j, const std::string& digits);
std::string sigma_R_apply(const std::string& digits);
std::string upsilon_rel_digits(const std::string& digits);

// prefix of the sigma_R fixed word 1213121121312...
std::string w_R_prefix(std::size_t n);

long long tribonacci(int n);

// s_{-2}..s_{j_max} as strings (index i holds s_{i-2}); w_j = s_j^2 cyclic
std::vector<std::string> generate_s_words(int j_max);
inline std::string s_word(const std::vector<std::string>& s, int j) { return s.at(j + 2); }

} // namespace ttb::words
