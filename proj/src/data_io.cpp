#include "gist/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace gist {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

double parse_double(std::string_view tok, std::size_t line, const char* what) {
  // std::from_chars<double> handles the full literal syntax; fall back to
  // strtod for toolchains without the FP overload.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);  // "+1" labels
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(tok) + "'");
  if (!std::isfinite(v))
    throw ParseError(line, std::string("non-finite ") + what);
  return v;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<std::size_t> expected_dims) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  DenseVector labels;
  std::size_t max_index = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;

    std::istringstream ls(line.substr(pos));
    std::string tok;
    if (!(ls >> tok)) continue;
    labels.push_back(parse_double(tok, line_no, "label"));

    std::size_t prev_index = 0;
    while (ls >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError(line_no, "malformed feature token '" + tok + "'");
      std::size_t idx = 0;
      {
        const char* b = tok.data();
        const char* e = b + colon;
        auto [ptr, ec] = std::from_chars(b, e, idx);
        if (ec != std::errc() || ptr != e)
          throw ParseError(line_no, "malformed index '" + tok.substr(0, colon) + "'");
      }
      if (idx < 1) throw ParseError(line_no, "feature index must be >= 1");
      if (idx <= prev_index)
        throw ParseError(line_no, "feature indices must be strictly increasing");
      prev_index = idx;
      const double v =
          parse_double(std::string_view(tok).substr(colon + 1), line_no, "value");
      cols.push_back(idx - 1);  // 1-based on disk, 0-based internally
      vals.push_back(v);
      max_index = std::max(max_index, idx);
    }
    offsets.push_back(vals.size());
  }

  if (labels.empty()) throw ParseError(line_no, "no samples in stream");

  std::size_t d = max_index;
  if (expected_dims && *expected_dims > d) d = *expected_dims;

  Dataset ds{SparseMatrix(labels.size(), d, std::move(offsets), std::move(cols),
                          std::move(vals)),
             std::move(labels), d, {}};
  std::set<double> distinct(ds.y.begin(), ds.y.end());
  ds.class_labels_seen.assign(distinct.begin(), distinct.end());
  return ds;
}

void serialize_libsvm(const Dataset& ds, std::ostream& out) {
  const auto& off = ds.x.row_offsets();
  const auto& col = ds.x.col_indices();
  const auto& val = ds.x.values();
  char buf[64];
  for (std::size_t r = 0; r < ds.x.rows(); ++r) {
    std::snprintf(buf, sizeof buf, "%.17g", ds.y[r]);
    out << buf;
    for (std::size_t k = off[r]; k < off[r + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", val[k]);
      out << ' ' << col[k] + 1 << ':' << buf;
    }
    out << '\n';
  }
}

Dataset binarize_multiclass(const Dataset& ds) {
  const auto& classes = ds.class_labels_seen;
  if (classes.size() < 2)
    throw std::invalid_argument("binarize_multiclass: need at least 2 classes");
  if (classes.size() == 2 && classes[0] == -1.0 && classes[1] == 1.0) return ds;

  // First ceil(c/2) classes (ascending) map to +1.
  const std::size_t positive = (classes.size() + 1) / 2;
  const double pivot = classes[positive - 1];
  Dataset out = ds;
  for (double& yi : out.y) yi = yi <= pivot ? 1.0 : -1.0;
  out.class_labels_seen = {-1.0, 1.0};
  return out;
}

SyntheticProblem synthesize(std::size_t n, std::size_t d, double density,
                            std::size_t sparsity_of_truth, double noise,
                            std::uint64_t seed, LossKind kind) {
  if (n == 0 || d == 0)
    throw std::invalid_argument("synthesize: n and d must be positive");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("synthesize: density must be in (0,1]");
  if (sparsity_of_truth > d)
    throw std::invalid_argument("synthesize: sparsity_of_truth must be <= d");
  if (noise < 0.0) throw std::invalid_argument("synthesize: noise must be >= 0");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const std::size_t row_nnz = std::min<std::size_t>(
      d, std::max<std::size_t>(1, static_cast<std::size_t>(
                                      std::llround(density * static_cast<double>(d)))));

  // All features live in a small active vocabulary (the per-row count, as
  // with the frequent words of a text corpus); the remaining columns stand in
  // for the long rare-word tail and stay empty. Spreading the mass uniformly
  // over all d columns would leave every direction nearly flat at desk scale
  // and no first-order method could make visible progress. Signed values keep
  // the active block close to isotropic instead of dominated by a single
  // all-positive direction.
  const std::size_t vocab = std::min(d, std::max(row_nnz, sparsity_of_truth));
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  std::uniform_real_distribution<double> positive(0.3, 1.0);

  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(n * row_nnz);
  vals.reserve(n * row_nnz);
  for (std::size_t r = 0; r < n; ++r) {
    // distinct column sample per row; duplicates rejected, with a capped
    // attempt budget plus deterministic fill so dense rows terminate
    std::set<std::size_t> chosen;
    for (std::size_t tries = 0; chosen.size() < row_nnz && tries < 200 * row_nnz;
         ++tries)
      chosen.insert(pick(rng));
    for (std::size_t j = 0; chosen.size() < row_nnz; ++j) chosen.insert(j);
    for (std::size_t c : chosen) {
      cols.push_back(c);
      const double v = positive(rng);
      vals.push_back(uniform01(rng) < 0.5 ? v : -v);
    }
    offsets.push_back(vals.size());
  }
  SparseMatrix x(n, d, std::move(offsets), std::move(cols), std::move(vals));

  DenseVector true_w(d, 0.0);
  {
    // support drawn from the active vocabulary, so the signal lives in
    // directions the data can actually identify
    std::set<std::size_t> chosen;
    for (std::size_t tries = 0;
         chosen.size() < sparsity_of_truth && tries < 200 * sparsity_of_truth;
         ++tries)
      chosen.insert(pick(rng));
    for (std::size_t j = 0; chosen.size() < sparsity_of_truth; ++j)
      chosen.insert(j);
    for (std::size_t c : chosen) {
      const double mag = 0.45 + 0.1 * uniform01(rng);
      true_w[c] = uniform01(rng) < 0.5 ? mag : -mag;
    }
  }

  DenseVector margins = matvec(x, true_w);
  DenseVector y(n);
  if (kind == LossKind::Logistic) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = 1.0 / (1.0 + std::exp(-margins[i]));
      y[i] = uniform01(rng) < p ? 1.0 : -1.0;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) y[i] = margins[i] + noise * gauss(rng);
  }

  Dataset ds{std::move(x), std::move(y), d, {}};
  std::set<double> distinct(ds.y.begin(), ds.y.end());
  ds.class_labels_seen.assign(distinct.begin(), distinct.end());
  return {std::move(ds), std::move(true_w)};
}

}  // namespace gist
