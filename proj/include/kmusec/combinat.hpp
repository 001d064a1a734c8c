#pragma once

#include <cstdint>
#include <iterator>
#include <vector>

namespace kmusec {

struct Composition {
  std::vector<int> parts;
  int total = 0;
};

// Weak compositions of `total` into `parts` slots, produced lazily in
// lexicographic order.
class Compositions {
 public:
  Compositions(int total, int parts);

  class iterator {
   public:
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using reference = const Composition&;
    using pointer = const Composition*;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    friend class Compositions;
    explicit iterator(Composition first) : current_(std::move(first)) {}
    Composition current_;
    bool done_ = false;
  };

  iterator begin() const;
  std::default_sentinel_t end() const { return {}; }

  // C(total + parts - 1, parts - 1), saturating at UINT64_MAX.
  std::uint64_t size() const;

 private:
  int total_;
  int parts_;
};

std::uint64_t composition_count(int total, int parts);

double log_factorial(int n);
double log_binomial(int n, int k);
double log_multinomial_weight(int total, const Composition& c);

// Term budget for closed-form enumeration; KMUSEC_TERM_BUDGET overrides.
std::uint64_t term_budget();
void check_term_budget(std::uint64_t estimate, const char* what);

}  // namespace kmusec
