#pragma once

#include <stdexcept>
#include <string>

namespace longres {

// Base class for all domain errors thrown by the library. Operational
// statuses (feasibility reports, sample-check verdicts) are return values,
// not exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class BadDegree : public Error {
 public:
  using Error::Error;
};

class DegreeExceeded : public Error {
 public:
  using Error::Error;
};

class BadInput : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class OddDegree : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

// The defect completion system is infeasible.  This can only happen for
// annihilators whose pair-graph edge uses the distinguished variable; see
// docs/defect-notes in README.
class DefectUncompletable : public Error {
 public:
  using Error::Error;
};

class NotSOS : public Error {
 public:
  using Error::Error;
};

class NotCertified : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class NotConstantResidue : public Error {
 public:
  using Error::Error;
};

class DenominatorDegenerate : public Error {
 public:
  using Error::Error;
};

class BaseNotConstant : public Error {
 public:
  using Error::Error;
};

class BaseNotPSD : public Error {
 public:
  using Error::Error;
};

class NotPositiveReal : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Violation of an internal guarantee (a construction failed to verify, a
// graph that must be connected was not, ...).  Never silently patched.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace longres
