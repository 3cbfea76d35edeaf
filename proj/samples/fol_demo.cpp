// Encodes a few first-order formulas, elaborates each encoding to a labelled
// LF object, type-checks it, and decodes it again.

#include <iostream>

#include "lf/lf.hpp"

int main() {
  namespace fol = lf::fol;
  fol::SignatureTable tbl{{"zero", 0}, {"succ", 1}, {"plus", 2}};
  auto sig = lf::check_signature(fol::gen_lf_signature(tbl));
  if (!sig) {
    std::cerr << sig.error().to_string() << "\n";
    return 1;
  }
  std::cout << lf::print(sig->signature()) << "\n";

  for (const char* text : {"forall x. plus(x, zero) = x", "succ(y) = plus(y, succ(zero)) & forall y. y = y",
                           "forall x. forall y. plus(x, y) = plus(y, x)"}) {
    auto p = fol::parse_formula(text, tbl);
    auto xs = fol::free_vars(p);
    auto g = fol::lf_context(xs);
    auto q = fol::encode(tbl, xs, p);
    auto m = lf::elaborate_qc(*sig, g, q, fol::prop());
    if (!m) {
      std::cerr << m.error().to_string() << "\n";
      return 1;
    }
    bool ok = static_cast<bool>(lf::check_object(*sig, g, *m, fol::prop()));
    auto back = fol::decode_formula(tbl, xs, q);
    std::cout << fol::to_string(p) << "\n"
              << "  encoded:    " << lf::print(q) << "\n"
              << "  elaborated: " << lf::print(*m) << (ok ? "  (checks)" : "  (REJECTED)") << "\n"
              << "  decoded:    " << fol::to_string(back) << "\n";
  }
}
