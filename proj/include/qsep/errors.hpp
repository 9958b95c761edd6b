#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OddN : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Overflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LocalityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPolynomial : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SymmetryBroken : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoUniqueMinimum : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentOracle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadInstanceFile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsep
