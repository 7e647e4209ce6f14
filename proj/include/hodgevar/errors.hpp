#ifndef HODGEVAR_ERRORS_HPP
#define HODGEVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hodgevar {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Model / family file is syntactically or semantically invalid.
struct MalformedSpec : Error {
  explicit MalformedSpec(const std::string& msg) : Error("malformed spec: " + msg) {}
};

// The structure equations do not satisfy d^2 = 0.
struct NotIntegrable : Error {
  explicit NotIntegrable(const std::string& msg) : Error("not integrable: " + msg) {}
};

// Series with mismatching parameter counts were combined.
struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& msg) : Error("arity mismatch: " + msg) {}
};

// Inner product of forms of different total degree.
struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& msg) : Error("degree mismatch: " + msg) {}
};

// A Beltrami differential fails the integrability test at a sample point.
struct NotIntegrableAt : Error {
  explicit NotIntegrableAt(const std::string& at) : Error("family not integrable at t = " + at) {}
};

// The deformed coframe is rank deficient at the sample point.
struct FrameDegenerate : Error {
  explicit FrameDegenerate(const std::string& msg) : Error("deformed frame degenerate: " + msg) {}
};

// An input that must be harmonic is not.
struct NotHarmonic : Error {
  explicit NotHarmonic(const std::string& msg) : Error("not harmonic: " + msg) {}
};

// An input that must be closed is not.
struct NotClosed : Error {
  explicit NotClosed(const std::string& msg) : Error("not closed: " + msg) {}
};

// Operation requires a model satisfying the del-delbar lemma.
struct DdbarRequired : Error {
  explicit DdbarRequired(const std::string& msg) : Error("del-delbar lemma required: " + msg) {}
};

// Input lies outside the requested filtration level.
struct NotInFiltration : Error {
  explicit NotInFiltration(const std::string& msg) : Error("not in filtration: " + msg) {}
};

// A spanning set expected to be independent lost rank.
struct RankDrop : Error {
  explicit RankDrop(const std::string& msg) : Error("rank drop: " + msg) {}
};

// Filtration chart columns are rank deficient.
struct FiltrationDegenerate : Error {
  explicit FiltrationDegenerate(const std::string& msg) : Error("filtration degenerate: " + msg) {}
};

}  // namespace hodgevar

#endif
