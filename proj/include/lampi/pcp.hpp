#pragma once

// Post correspondence problems and their reduction to typability of pure
// terms in a fixed λΠ context.
//
// All Term and PureTerm values produced here are scoped over gamma():
//   T : Type, a : T -> T, b : T -> T, c : T, d : T, P : T -> Type,
//   F : !x : T . P x -> T

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lampi/term.hpp"
#include "lampi/typing.hpp"

namespace lampi {

class PcpError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A word over {A, B}.
class Word {
public:
    Word() = default;
    // Throws PcpError on a letter outside {A, B}. "-" is the empty word.
    static Word parse(std::string_view letters);

    const std::string& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    std::string str() const { return letters_.empty() ? "-" : letters_; }

    Word operator+(const Word& rhs) const;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::string letters_;
};

struct WordPair {
    Word top;
    Word bottom;
};

class PcpInstance {
public:
    // Throws PcpError when `pairs` is empty.
    explicit PcpInstance(std::vector<WordPair> pairs);

    std::size_t size() const { return pairs_.size(); }
    // 0-based
    const WordPair& pair(std::size_t i) const { return pairs_.at(i); }
    const std::vector<WordPair>& pairs() const { return pairs_; }

    // One pair per line, two words over {A, B}, `-` for ε, `#` comments.
    static PcpInstance parse(std::string_view text);
    std::string str() const;

private:
    std::vector<WordPair> pairs_;
};

// Non-empty index sequence, stored 0-based.
class SolutionSeq {
public:
    // Throws PcpError when empty.
    explicit SolutionSeq(std::vector<std::size_t> zero_based);
    static SolutionSeq from_one_based(const std::vector<std::size_t>& indices);
    // "3,2,3,1"
    static SolutionSeq parse(std::string_view text);

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::vector<std::size_t> one_based() const;
    std::size_t size() const { return indices_.size(); }
    std::string str() const;

    friend bool operator==(const SolutionSeq&, const SolutionSeq&) = default;

private:
    std::vector<std::size_t> indices_;
};

enum class Side { Top, Bottom };

// Concatenation of the chosen side's words along `seq`; throws PcpError on
// an out-of-range index.
Word concatenate(const PcpInstance& inst, const SolutionSeq& seq, Side side);

Context build_gamma();

// Positions of the declarations of gamma() as de Bruijn indices at its end.
namespace gamma_index {
inline constexpr std::size_t T = 6, a = 5, b = 4, c = 3, d = 2, P = 1, F = 0;
}

// The literal recursive encoding λy:T.(a (φ̂ y)), not normalized.
Term encode_word(const Word& w);
PureTerm encode_word_pure(const Word& w);

// a/b spine of the word ending in `tail`: (a (b ... tail)).
Term letter_spine(const Word& w, const Term& tail);

// (ŵ_{i1} (... (ŵ_{ip} c)...)) with ŵ = φ̂ on the top side, ψ̂ on the bottom.
Term apply_encoded(const SolutionSeq& seq, Side side, const PcpInstance& inst);

// Convertibility of the two sides of apply_encoded.
bool verify_solution(const PcpInstance& inst, const SolutionSeq& seq, std::uint64_t fuel = kDefaultFuel);

inline constexpr std::size_t kDefaultMaxLen = 12;

// Shortest solution of length <= max_len, lexicographically least among
// those; breadth-first with prefix-compatibility pruning.
std::optional<SolutionSeq> solve_pcp_bounded(const PcpInstance& inst, std::size_t max_len = kDefaultMaxLen);

// λf.λg.λh.(f (g a..a) (h (g φ̃1..φ̃n)) (h (g ψ̃1..ψ̃n)) (F c (g λy.y..)) (F d (g λy.d..)))
PureTerm build_reduction_term(const PcpInstance& inst);

struct Witness {
    Context delta;  // always empty: f, g, h are typed by their λ-annotations
    Term term;

    // Annotations of the three outer binders, each in the scope where it
    // appears (f's at gamma, g's under f, h's under f and g).
    const Term& f_type() const;
    const Term& g_type() const;
    const Term& h_type() const;
};

// Throws PcpError unless seq solves inst.
Witness build_witness(const PcpInstance& inst, const SolutionSeq& seq, std::uint64_t fuel = kDefaultFuel);

// Declarations of Δ, one per line, then the annotated term.
std::string export_witness(const Witness& w);
Witness import_witness(std::string_view text);

struct EquationCheck {
    std::string family;  // gamma, beta-id, beta-d, delta, delta-id, delta-d
    std::string label;
    Term lhs;
    Term rhs;
    bool holds = false;
};

struct ForwardReport {
    Term beta;   // λx1:T->T ... λxn:T->T . B, read off g's type
    Term delta;  // λx1:T->T ... λxn:T->T . D where B = P D
    Term gamma;  // domain of h's type
    Term delta_normal;
    std::vector<EquationCheck> equations;
    // Sequence read off δ's normal form when it has the composition shape.
    std::optional<SolutionSeq> extracted;
    bool extracted_is_solution = false;

    bool all_hold() const;
    bool family_holds(const std::string& family) const;
};

// Throws PcpError when g's type is not Πx1:T→T...Πxn:T→T.(P D) or the
// witness term is not λf.λg.λh.body.
ForwardReport demonstrate_forward_equations(const PcpInstance& inst, const Witness& witness,
                                            std::uint64_t fuel = kDefaultFuel);

}  // namespace lampi
