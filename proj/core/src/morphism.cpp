#include "rht/morphism.hpp"

#include <stdexcept>

namespace rht {

void Morphism::set_image(const Generator& g, Polynomial image) {
  if (!source_.has_generator(g))
    throw std::invalid_argument("Morphism::set_image: unknown source generator " + g.name);
  image = target_.reduce(std::move(image));
  if (!image.is_zero()) {
    auto hd = image.homogeneous_degree();
    if (!hd || *hd != g.degree)
      throw std::invalid_argument("Morphism::set_image: image of " + g.name +
                                  " is not homogeneous of degree " + std::to_string(g.degree));
    if (!target_.contains_polynomial(image))
      throw std::invalid_argument("Morphism::set_image: image of " + g.name +
                                  " uses generators outside the target algebra");
  }
  images_[g] = std::move(image);
}

const Polynomial& Morphism::image_of(const Generator& g) const {
  auto it = images_.find(g);
  if (it == images_.end())
    throw std::out_of_range("Morphism: no image recorded for generator " + g.name);
  return it->second;
}

bool Morphism::has_image(const Generator& g) const { return images_.count(g) > 0; }

Polynomial Morphism::apply(const Polynomial& p) const {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term(c);
    for (const auto& [g, e] : m.factors()) {
      const Polynomial& img = image_of(g);
      term = target_.multiply(term, target_.power(img, e));
      if (term.is_zero()) break;
    }
    out += term;
  }
  return target_.reduce(out);
}

Morphism::ChainMapReport Morphism::check_chain_map() const {
  ChainMapReport rep;
  for (const auto& g : source_.generators()) {
    Polynomial lhs = apply(source_.differential_of(g));
    Polynomial rhs = target_.apply_differential(image_of(g));
    Polynomial residue = lhs - rhs;
    if (!residue.is_zero()) {
      rep.ok = false;
      rep.failures.push_back({g, residue});
    }
  }
  return rep;
}

Morphism Morphism::compose_after(const Morphism& inner) const {
  Morphism out(inner.source(), target_);
  for (const auto& g : inner.source().generators())
    out.set_image(g, apply(inner.image_of(g)));
  return out;
}

}  // namespace rht
