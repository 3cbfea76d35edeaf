#pragma once

// Signatures and parse shorthands shared by the unit tests.

#include <stdexcept>
#include <string>
#include <string_view>

#include "lf/lf.hpp"

namespace fixture {

// The first-order logic signature extended with a few test constants.
inline constexpr const char* kLogic = R"(
iota : type.
o : type.
p : iota -> type.
a : type.
b : iota -> type.
c : iota.
d : iota.
t : iota.
f : iota -> iota.
eq : iota -> iota -> o.
and : o -> o -> o.
forall : (iota -> o) -> o.
)";

inline lf::CheckedSignature load(std::string_view text) {
  auto parsed = lf::parse_signature(text, "<fixture>");
  if (!parsed) throw std::logic_error(parsed.error().to_string());
  auto sig = lf::check_signature(*parsed);
  if (!sig) throw std::logic_error(sig.error().to_string());
  return *sig;
}

struct Lf {
  lf::CheckedSignature sig;

  explicit Lf(std::string_view text = kLogic) : sig(load(text)) {}

  const lf::Signature& raw() const { return sig.signature(); }

  lf::Context ctx(std::string_view s) const {
    auto r = lf::parse_context(s, raw());
    if (!r) throw std::logic_error(r.error().to_string());
    return *r;
  }
  lf::Object obj(std::string_view s, const lf::Context& g = {}) const {
    auto r = lf::parse_object(s, raw(), g);
    if (!r) throw std::logic_error(r.error().to_string());
    return *r;
  }
  lf::Family ty(std::string_view s, const lf::Context& g = {}) const {
    auto r = lf::parse_family(s, raw(), g);
    if (!r) throw std::logic_error(r.error().to_string());
    return *r;
  }
  lf::Kind kind(std::string_view s, const lf::Context& g = {}) const {
    auto r = lf::parse_kind(s, raw(), g);
    if (!r) throw std::logic_error(r.error().to_string());
    return *r;
  }
};

inline lf::SimpleType base(const char* a) { return lf::SimpleType::base(a); }
inline lf::SimpleType arr(lf::SimpleType d, lf::SimpleType c) { return lf::SimpleType::arrow(std::move(d), std::move(c)); }

}  // namespace fixture
