#include "credal/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace credal {

FiniteSpace::FiniteSpace(std::string name, std::vector<std::string> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  if (elements_.empty())
    throw validation_error("space '" + name_ + "': no elements");
  for (int i = 0; i < static_cast<int>(elements_.size()); ++i) {
    if (elements_[i].empty())
      throw validation_error("space '" + name_ + "': empty element label");
    if (!index_.emplace(elements_[i], i).second)
      throw validation_error("space '" + name_ + "': duplicate element '" +
                             elements_[i] + "'");
  }
}

SpacePtr FiniteSpace::make(std::string name,
                           std::vector<std::string> elements) {
  return std::make_shared<FiniteSpace>(std::move(name), std::move(elements));
}

const std::string& FiniteSpace::label(int i) const {
  if (i < 0 || i >= size())
    throw validation_error("space '" + name_ + "': index out of range");
  return elements_[i];
}

int FiniteSpace::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw validation_error("space '" + name_ + "': unknown element '" + label +
                           "'");
  return it->second;
}

bool FiniteSpace::contains(const std::string& label) const {
  return index_.count(label) > 0;
}

bool FiniteSpace::same_as(const FiniteSpace& other) const {
  return this == &other ||
         (name_ == other.name_ && elements_ == other.elements_);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* where) {
  if (!same_space(a, b))
    throw validation_error(std::string(where) + ": space mismatch ('" +
                           (a ? a->name() : "null") + "' vs '" +
                           (b ? b->name() : "null") + "')");
}

SpacePtr product_space(const SpacePtr& a, const SpacePtr& b) {
  return product_space(std::vector<SpacePtr>{a, b});
}

SpacePtr product_space(const std::vector<SpacePtr>& factors) {
  if (factors.empty()) throw validation_error("product_space: no factors");
  std::string name;
  long long total = 1;
  for (size_t k = 0; k < factors.size(); ++k) {
    if (!factors[k]) throw validation_error("product_space: null factor");
    if (k) name += '*';
    name += factors[k]->name();
    total *= factors[k]->size();
    if (total > (1LL << 26))
      throw validation_error("product_space: too large");
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(total));
  std::vector<int> radix;
  for (const auto& f : factors) radix.push_back(f->size());
  for (long long flat = 0; flat < total; ++flat) {
    std::vector<int> d = unflatten(static_cast<int>(flat), radix);
    std::string lab;
    for (size_t k = 0; k < factors.size(); ++k) {
      if (k) lab += ',';
      lab += factors[k]->label(d[k]);
    }
    labels.push_back(std::move(lab));
  }
  return FiniteSpace::make(std::move(name), std::move(labels));
}

int flat_index(const std::vector<int>& digits, const std::vector<int>& radix) {
  if (digits.size() != radix.size())
    throw validation_error("flat_index: arity mismatch");
  long long flat = 0;
  for (size_t k = 0; k < radix.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= radix[k])
      throw validation_error("flat_index: digit out of range");
    flat = flat * radix[k] + digits[k];
  }
  return static_cast<int>(flat);
}

std::vector<int> unflatten(int flat, const std::vector<int>& radix) {
  std::vector<int> d(radix.size(), 0);
  for (size_t k = radix.size(); k-- > 0;) {
    d[k] = flat % radix[k];
    flat /= radix[k];
  }
  if (flat != 0) throw validation_error("unflatten: index out of range");
  return d;
}

Gamble::Gamble(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw validation_error("gamble: null space");
  if (static_cast<int>(values_.size()) != space_->size())
    throw validation_error("gamble on '" + space_->name() +
                           "': wrong number of values");
  for (double v : values_)
    if (!std::isfinite(v))
      throw validation_error("gamble on '" + space_->name() +
                             "': non-finite value");
}

Gamble Gamble::constant(SpacePtr space, double c) {
  if (!space) throw validation_error("gamble: null space");
  return Gamble(space, std::vector<double>(space->size(), c));
}

Gamble Gamble::indicator(SpacePtr space, const std::vector<int>& elements) {
  if (!space) throw validation_error("gamble: null space");
  std::vector<double> v(space->size(), 0.0);
  for (int e : elements) {
    if (e < 0 || e >= space->size())
      throw validation_error("indicator: element out of range");
    v[e] = 1.0;
  }
  return Gamble(std::move(space), std::move(v));
}

double Gamble::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Gamble::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Gamble::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

Gamble& Gamble::operator+=(const Gamble& g) {
  require_same_space(space_, g.space_, "gamble +");
  for (int i = 0; i < size(); ++i) values_[i] += g.values_[i];
  return *this;
}

Gamble& Gamble::operator-=(const Gamble& g) {
  require_same_space(space_, g.space_, "gamble -");
  for (int i = 0; i < size(); ++i) values_[i] -= g.values_[i];
  return *this;
}

Gamble& Gamble::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Gamble& Gamble::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

MassFunction::MassFunction(SpacePtr space, std::vector<double> probs,
                           double tol)
    : space_(std::move(space)), probs_(std::move(probs)) {
  if (!space_) throw validation_error("mass function: null space");
  if (static_cast<int>(probs_.size()) != space_->size())
    throw validation_error("mass function on '" + space_->name() +
                           "': wrong number of entries");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0)
      throw validation_error("mass function on '" + space_->name() +
                             "': negative or non-finite entry");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > tol)
    throw validation_error("mass function on '" + space_->name() +
                           "': entries sum to " + std::to_string(sum) +
                           ", not 1");
}

MassFunction MassFunction::degenerate(SpacePtr space, int element) {
  if (!space) throw validation_error("mass function: null space");
  std::vector<double> p(space->size(), 0.0);
  if (element < 0 || element >= space->size())
    throw validation_error("degenerate mass: element out of range");
  p[element] = 1.0;
  return MassFunction(std::move(space), std::move(p));
}

MassFunction MassFunction::uniform(SpacePtr space) {
  if (!space) throw validation_error("mass function: null space");
  int n = space->size();
  return MassFunction(std::move(space),
                      std::vector<double>(n, 1.0 / static_cast<double>(n)),
                      1e-9);
}

double MassFunction::expectation(const Gamble& f) const {
  require_same_space(space_, f.space(), "expectation");
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += probs_[i] * f[i];
  return s;
}

double MassFunction::mass_of(const std::vector<int>& elements) const {
  double s = 0.0;
  for (int e : elements) {
    if (e < 0 || e >= size())
      throw validation_error("mass_of: element out of range");
    s += probs_[e];
  }
  return s;
}

}  // namespace credal
