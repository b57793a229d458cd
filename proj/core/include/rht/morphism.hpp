#pragma once

#include "rht/cdga.hpp"

#include <map>
#include <string>
#include <vector>

namespace rht {

// A CDGA morphism: algebra map determined by generator images, required to
// preserve degree.  Generators of the source with no recorded image map to 0
// only if explicitly set; otherwise apply() throws.
class Morphism {
 public:
  Morphism() = default;
  Morphism(CDGA source, CDGA target) : source_(std::move(source)), target_(std::move(target)) {}

  const CDGA& source() const { return source_; }
  const CDGA& target() const { return target_; }

  void set_image(const Generator& g, Polynomial image);
  const Polynomial& image_of(const Generator& g) const;
  bool has_image(const Generator& g) const;

  // Apply multiplicatively to a polynomial in the source algebra.
  Polynomial apply(const Polynomial& p) const;

  // phi o d_source == d_target o phi on every generator.
  struct ChainMapReport {
    bool ok = true;
    std::vector<std::pair<Generator, Polynomial>> failures;  // residues
  };
  ChainMapReport check_chain_map() const;

  // this o inner (inner : A -> B, this : B -> C gives A -> C).
  Morphism compose_after(const Morphism& inner) const;

 private:
  CDGA source_;
  CDGA target_;
  std::map<Generator, Polynomial> images_;
};

}  // namespace rht
