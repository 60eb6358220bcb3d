#pragma once

#include <stdexcept>
#include <string>

namespace cheby {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateNodes : public Error {
 public:
  DuplicateNodes(int i_, int j_)
      : Error("duplicate nodes at indices " + std::to_string(i_) + " and " +
              std::to_string(j_)),
        i(i_),
        j(j_) {}
  int i, j;
};

class TooFewNodes : public Error {
 public:
  TooFewNodes(int m_, int n_)
      : Error("need at least n+1 = " + std::to_string(n_ + 1) +
              " nodes, got m = " + std::to_string(m_)),
        m(m_),
        n(n_) {}
  int m, n;
};

class RankDeficientBasis : public Error {
 public:
  RankDeficientBasis() : Error("basis matrix is rank deficient") {}
  explicit RankDeficientBasis(const std::string& what) : Error(what) {}
};

class NonRealData : public Error {
 public:
  NonRealData() : Error("real mode requires zero imaginary parts") {}
};

class NonFiniteData : public Error {
 public:
  NonFiniteData() : Error("nodes and values must be finite") {}
};

class UnknownProblem : public Error {
 public:
  explicit UnknownProblem(const std::string& name)
      : Error("unknown builtin problem '" + name + "'") {}
};

class InvalidWeights : public Error {
 public:
  explicit InvalidWeights(const std::string& what) : Error(what) {}
};

class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& what) : Error(what) {}
};

class BreakdownRankDeficient : public Error {
 public:
  explicit BreakdownRankDeficient(int step_)
      : Error("orthogonalization broke down at step " + std::to_string(step_) +
              " (weight support too small or coincident nodes)"),
        step(step_) {}
  int step;
};

class NoRecurrence : public Error {
 public:
  NoRecurrence()
      : Error("basis has no stored recurrence; evaluation at new nodes "
              "requires an Arnoldi-built basis") {}
};

class DivisionByZeroSubdiagonal : public Error {
 public:
  explicit DivisionByZeroSubdiagonal(int k_)
      : Error("zero subdiagonal recurrence coefficient at column " +
              std::to_string(k_)),
        k(k_) {}
  int k;
};

class AllWeightsFiltered : public Error {
 public:
  AllWeightsFiltered(int support_, int needed_)
      : Error("weight filtering left " + std::to_string(support_) +
              " nodes, need at least " + std::to_string(needed_)),
        support(support_),
        needed(needed_) {}
  int support, needed;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator()
      : Error("all residuals vanish on the weight support (interpolation "
              "reached)") {}
};

class IndefiniteSystem : public Error {
 public:
  IndefiniteSystem()
      : Error("inner system is not positive definite (invalid state)") {}
};

class NonFiniteIterate : public Error {
 public:
  explicit NonFiniteIterate(int iter_)
      : Error("non-finite iterate at iteration " + std::to_string(iter_)),
        iter(iter_) {}
  int iter;
};

class LpFailure : public Error {
 public:
  explicit LpFailure(const std::string& what) : Error(what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

class DigestMismatch : public Error {
 public:
  explicit DigestMismatch(const std::string& what) : Error(what) {}
};

}  // namespace cheby
