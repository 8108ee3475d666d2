#include "boolsketch/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "boolsketch/errors.hpp"

namespace boolsketch {

void SampleBatch::push_back(PointView x, double value) {
  if (x.n != n_) throw DimensionMismatch("SampleBatch: point dimension mismatch");
  bits_.insert(bits_.end(), x.neg.begin(), x.neg.begin() + static_cast<std::ptrdiff_t>(words_));
  values_.push_back(value);
}

LabeledSample SampleBatch::sample(std::size_t i) const {
  const auto p = point(i);
  return {InputPoint(gf2::BitVector(n_, p.neg)), values_[i]};
}

InputPoint uniform_point(std::size_t n, Rng& rng) {
  gf2::BitVector bits(n);
  for (auto& w : bits.words()) w = rng.next_u64();
  return InputPoint(gf2::BitVector(n, bits.words()));
}

LabeledSample SampleOracle::draw(Rng& rng) const {
  auto x = uniform_point(dimension(), rng);
  const double v = observe(x, rng);
  return {std::move(x), v};
}

void NoiseSpec::validate(const SparsePolynomial& main) const {
  if (!(epsilon >= 0.0) || !(nu >= 0.0)) {
    throw InvalidArgument("NoiseSpec: epsilon and nu must be non-negative");
  }
  if (!tail) return;
  if (tail->dimension() != main.dimension()) {
    throw DimensionMismatch("NoiseSpec: tail dimension differs from main polynomial");
  }
  if (!(tail->l1_norm() < nu)) {
    throw InvalidArgument("NoiseSpec: tail L1 norm must be strictly below nu");
  }
  for (const auto& [s, c] : tail->terms()) {
    if (main.terms().contains(s)) {
      throw InvalidArgument("NoiseSpec: tail shares a parity set with the main part");
    }
  }
}

NoisyPolynomialOracle::NoisyPolynomialOracle(SparsePolynomial main, NoiseSpec noise,
                                             NoiseHook hook)
    : main_(std::move(main)), noise_(std::move(noise)), hook_(std::move(hook)) {
  noise_.validate(main_);
}

double NoisyPolynomialOracle::observe(PointView x, Rng& rng) const {
  double clean = eval_poly(main_, x);
  if (noise_.tail) clean += eval_poly(*noise_.tail, x);
  const double eps = noise_.epsilon;
  double e = hook_ ? hook_(x, clean, eps, rng) : rng.uniform(-eps, eps);
  e = std::clamp(e, -eps, eps);
  return clean + e;
}

SparsePolynomial NoisyPolynomialOracle::full_polynomial() const {
  SparsePolynomial f = main_;
  if (noise_.tail) {
    for (const auto& [s, c] : noise_.tail->terms()) f.add(s, c);
  }
  return f;
}

SampleBatch draw_batch(const SampleOracle& oracle, std::size_t m, Rng& rng) {
  if (m < 1) throw InvalidArgument("draw_batch: m must be >= 1");
  const std::size_t n = oracle.dimension();
  SampleBatch batch(n);
  batch.reserve(m);
  gf2::BitVector bits(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& w : bits.words()) w = rng.next_u64();
    bits = gf2::BitVector(n, bits.words());  // clears the tail word
    const PointView x{bits.words(), n};
    batch.push_back(x, oracle.observe(x, rng));
  }
  return batch;
}

SampleBatch draw_batch(const SampleOracle& oracle, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  return draw_batch(oracle, m, rng);
}

namespace {

MaxWindow collect_at_least(const SampleBatch& batch, double threshold, double eta) {
  MaxWindow w;
  w.eta = eta;
  w.rows = gf2::BitMatrix(0, batch.dimension());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch.value(i) >= threshold) {
      const auto p = batch.point(i);
      w.rows.append_row(gf2::BitVector(p.n, p.neg));
      w.values.push_back(batch.value(i));
      w.source.push_back(i);
    }
  }
  return w;
}

double batch_max(const SampleBatch& batch) {
  if (batch.empty()) throw InvalidArgument("max window of an empty batch");
  return *std::max_element(batch.values().begin(), batch.values().end());
}

}  // namespace

MaxWindow collect_max_rows(const SampleBatch& batch) {
  const double eta = batch_max(batch);
  return collect_at_least(batch, eta, eta);
}

MaxWindow max_cluster(const SampleBatch& batch, double epsilon, double nu) {
  if (!(epsilon + nu >= 0.0)) throw InvalidArgument("max_cluster: epsilon + nu < 0");
  const double eta = batch_max(batch);
  return collect_at_least(batch, eta - 2.0 * (epsilon + nu), eta);
}

void write_csv(std::ostream& out, const SampleBatch& batch) {
  const std::size_t n = batch.dimension();
  for (std::size_t j = 0; j < n; ++j) out << 'x' << (j + 1) << ',';
  out << "value\n";
  char buf[64];
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto p = batch.point(i);
    for (std::size_t j = 0; j < n; ++j) out << (p.sign(j) < 0 ? "-1," : "+1,");
    auto res = std::to_chars(buf, buf + sizeof buf, batch.value(i));
    out.write(buf, res.ptr - buf);
    out << '\n';
  }
}

SampleBatch read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedLine(1, "missing CSV header");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (columns < 1 || line.substr(line.rfind(',') + 1).rfind("value", 0) != 0) {
    throw MalformedLine(1, "header must end with a value column");
  }
  const std::size_t n = columns - 1;
  SampleBatch batch(n);
  gf2::BitVector bits(n);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    bits = gf2::BitVector(n);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto comma = line.find(',', pos);
      if (comma == std::string::npos) throw MalformedLine(lineno, "too few columns");
      const std::string_view cell(line.data() + pos, comma - pos);
      if (cell == "-1") {
        bits.set(j);
      } else if (cell != "+1" && cell != "1") {
        throw MalformedLine(lineno, "sign column is not +1/-1");
      }
      pos = comma + 1;
    }
    double value = 0.0;
    const char* first = line.data() + pos;
    const char* last = line.data() + line.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) {
      throw MalformedLine(lineno, "value column is not a number");
    }
    batch.push_back(PointView{bits.words(), n}, value);
  }
  return batch;
}

}  // namespace boolsketch
