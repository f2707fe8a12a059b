#pragma once

#include <stdexcept>
#include <string>

namespace ezdkit {

enum class Err {
  NonPrimeModulus,
  ReducibleModulus,
  MixedFields,
  SyntaxError,
  UnknownVariable,
  NonHomogeneousRelation,
  DuplicateVariable,
  RaggedRows,
  NotArtinianWithinCap,
  AssocCheckFailed,
  AlgebraMismatch,
  EntriesNotInAlgebra,
  NotShort,
  NotInMaxIdeal,
  ZeroElement,
  UnitElement,
  WrongHilbertSeries,
  BudgetExceeded,
  InfiniteField,
  PreconditionFailed,
  HypothesesFail,
  BadArgument,
};

const char* err_name(Err e);

/// Domain error carrying a stable code plus a human-readable message.
class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

/// Parse errors carry a 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_, col_;
};

} // namespace ezdkit
