#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "gist/linalg.hpp"
#include "gist/losses.hpp"

namespace gist {

struct Dataset {
  SparseMatrix x;
  DenseVector y;
  std::size_t feature_count = 0;
  std::vector<double> class_labels_seen;  // distinct original labels, ascending
};

// Thrown on malformed LIBSVM input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses LIBSVM text: `<label> <idx>:<val> ...` per line, 1-based strictly
// increasing indices. Lines beginning with '#' are skipped; CRLF accepted.
// feature_count is max index seen, or expected_dims if larger.
Dataset parse_libsvm(std::istream& in,
                     std::optional<std::size_t> expected_dims = std::nullopt);

// Writes the dataset back in LIBSVM format (used for round-trip checks).
void serialize_libsvm(const Dataset& ds, std::ostream& out);

// Maps the first ceil(c/2) classes (ascending label order) to +1 and the
// rest to -1. Throws std::invalid_argument on a single-class dataset.
Dataset binarize_multiclass(const Dataset& ds);

// Deterministic synthetic sparse problem. Each row gets round(density*d)
// (at least 1) uniform(-1,1) entries at distinct columns; true_w has
// sparsity_of_truth nonzero coordinates. For Logistic, labels are sampled
// from the model; for LeastSquares, y = X w_true + noise * N(0,1).
struct SyntheticProblem {
  Dataset data;
  DenseVector true_w;
};
SyntheticProblem synthesize(std::size_t n, std::size_t d, double density,
                            std::size_t sparsity_of_truth, double noise,
                            std::uint64_t seed,
                            LossKind kind = LossKind::Logistic);

}  // namespace gist
