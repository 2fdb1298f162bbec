#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

class FiniteSpace;
using SpacePtr = std::shared_ptr<const FiniteSpace>;

// A named finite possibility space with ordered, distinct element labels.
// Immutable; passed around by shared pointer.
class FiniteSpace {
 public:
  FiniteSpace(std::string name, std::vector<std::string> elements);

  static SpacePtr make(std::string name, std::vector<std::string> elements);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& label(int i) const;
  const std::vector<std::string>& labels() const { return elements_; }

  // Index of a label; throws validation_error if unknown.
  int index(const std::string& label) const;
  bool contains(const std::string& label) const;

  bool same_as(const FiniteSpace& other) const;

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::unordered_map<std::string, int> index_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b,
                        const char* where);

// Product spaces.  Convention used everywhere in this library: the LAST
// factor varies fastest, i.e. the flat index of (i1,...,ik) is the mixed
// radix number with i1 most significant.  Element labels are the factor
// labels joined with ','.
SpacePtr product_space(const SpacePtr& a, const SpacePtr& b);
SpacePtr product_space(const std::vector<SpacePtr>& factors);

int flat_index(const std::vector<int>& digits, const std::vector<int>& radix);
std::vector<int> unflatten(int flat, const std::vector<int>& radix);

// A real-valued function on a finite space.
class Gamble {
 public:
  Gamble(SpacePtr space, std::vector<double> values);

  static Gamble constant(SpacePtr space, double c);
  // Indicator of a set of element indices.
  static Gamble indicator(SpacePtr space, const std::vector<int>& elements);

  const SpacePtr& space() const { return space_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double min_value() const;
  double max_value() const;
  double sup_norm() const;

  Gamble& operator+=(const Gamble& g);
  Gamble& operator-=(const Gamble& g);
  Gamble& operator*=(double s);
  Gamble& operator+=(double c);

  friend Gamble operator+(Gamble f, const Gamble& g) { return f += g; }
  friend Gamble operator-(Gamble f, const Gamble& g) { return f -= g; }
  friend Gamble operator*(double s, Gamble f) { return f *= s; }
  friend Gamble operator+(Gamble f, double c) { return f += c; }
  friend Gamble operator-(Gamble f, double c) { return f += -c; }
  friend Gamble operator-(Gamble f) { return f *= -1.0; }

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

// A probability mass function on a finite space.  Entries are nonnegative
// and sum to one within `tol` (default 1e-12).  Entries are stored exactly
// as given; nothing is ever renormalized.
class MassFunction {
 public:
  MassFunction(SpacePtr space, std::vector<double> probs, double tol = 1e-12);

  static MassFunction degenerate(SpacePtr space, int element);
  static MassFunction uniform(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  double expectation(const Gamble& f) const;
  // Probability of a set of element indices.
  double mass_of(const std::vector<int>& elements) const;

 private:
  SpacePtr space_;
  std::vector<double> probs_;
};

}  // namespace credal
