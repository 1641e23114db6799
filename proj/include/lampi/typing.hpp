#pragma once

// Algorithmic type checking for the λΠ-calculus: types are synthesized
// structurally and the conversion rule is applied only where two types
// meet, at applications and in check_type.

#include <cstdint>
#include <string>

#include "lampi/term.hpp"

namespace lampi {

class TypeError : public KernelError {
public:
    using KernelError::KernelError;
};

// A derivable conclusion Γ ⊢ subject : type.
struct Judgment {
    Context context;
    Term subject;
    Term type;
};

// Throws TypeError naming the first ill-formed entry.
void check_context(const Context& ctx, std::uint64_t fuel = kDefaultFuel);

// Precondition: ctx is well-formed. The returned type is not normalized.
Term infer_type(const Context& ctx, const Term& t, std::uint64_t fuel = kDefaultFuel);

Judgment derive(const Context& ctx, const Term& t, std::uint64_t fuel = kDefaultFuel);

// The expected type must itself be well-sorted; it is checked before the
// comparison.
void check_type(const Context& ctx, const Term& t, const Term& expected, std::uint64_t fuel = kDefaultFuel);

// t : T with T : Type.
bool is_object(const Context& ctx, const Term& t, std::uint64_t fuel = kDefaultFuel);

enum class WitnessFailure { None, ContextIllFormed, IllTyped, NotObject, ContentMismatch };

struct WitnessVerdict {
    WitnessFailure failure = WitnessFailure::None;
    std::string detail;

    bool ok() const { return failure == WitnessFailure::None; }
    explicit operator bool() const { return ok(); }
};

const char* to_string(WitnessFailure f);

// Checks that `annotated` is an object of ΓΔ whose content is `pure`.
// `pure` is scoped over the extended context ΓΔ.
WitnessVerdict check_pure_typability_witness(const Context& gamma, const Context& delta, const Term& annotated,
                                             const PureTerm& pure, std::uint64_t fuel = kDefaultFuel);

}  // namespace lampi
