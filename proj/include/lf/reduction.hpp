#pragma once

// Weak head reduction.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "lf/syntax.hpp"

namespace lf {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(std::uint64_t budget)
      : std::runtime_error("reduction budget of " + std::to_string(budget) + " steps exhausted") {}
};

/// A budget of weak head reduction steps shared by one query.
class Fuel {
 public:
  explicit Fuel(std::uint64_t steps = kDefaultFuel) : budget_(steps), remaining_(steps) {}

  void consume() {
    if (remaining_ == 0) throw FuelExhausted(budget_);
    --remaining_;
  }
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
  std::uint64_t remaining_;
};

/// One step: (λx:A. M) N ↦ [N/x]M at the head, or congruence on the left of
/// an application. Absent when m has no head redex.
inline std::optional<Object> whr_step(const Object& m) {
  const auto* a = m.as<App>();
  if (!a) return std::nullopt;
  if (const auto* l = a->fun.as<Lam>()) return instantiate(l->body, a->arg);
  auto fun = whr_step(a->fun);
  if (!fun) return std::nullopt;
  return make(App{std::move(*fun), a->arg});
}

/// Iterates whr_step until no redex remains. Throws FuelExhausted.
inline Object whnf(Object m, Fuel& fuel) {
  while (auto next = whr_step(m)) {
    fuel.consume();
    m = std::move(*next);
  }
  return m;
}

inline Object whnf(const Object& m, std::uint64_t steps = kDefaultFuel) {
  if (steps == 0) throw std::invalid_argument("whnf requires a positive step budget");
  Fuel fuel(steps);
  return whnf(m, fuel);
}

}  // namespace lf
