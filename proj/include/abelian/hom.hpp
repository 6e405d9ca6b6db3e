#pragma once

#include <vector>

#include "abelian/group.hpp"
#include "abelian/subgroup.hpp"

namespace abelian {

/**
 * Homomorphism between abelian groups, stored as the images of the source
 * reference generators.  Well-definedness is exactly the order condition
 * |images[i]| divides d_i; nothing else about a generator-image table can go
 * wrong, but it is checked, not assumed.
 */
class GroupHom {
public:
  GroupHom() = default;

  GroupHom(AbelianGroup source, AbelianGroup target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.rank())
      throw ParseError("hom: one image per source generator required");
    for (const auto& im : images_)
      if (!target_.valid(im))
        throw ParseError("hom: image outside target group");
  }

  static GroupHom identity(const AbelianGroup& g) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < g.rank(); ++i) images.push_back(g.unit(i));
    return GroupHom(g, g, std::move(images));
  }

  const AbelianGroup& source() const { return source_; }
  const AbelianGroup& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

  bool is_well_defined() const {
    const auto& d = source_.generator_orders();
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (d[i] % target_.element_order(images_[i]) != 0) return false;
    return true;
  }

  Element apply(const Element& e) const {
    if (!source_.valid(e)) throw ParseError("hom: element outside source group");
    Element acc = target_.zero();
    for (std::size_t i = 0; i < images_.size(); ++i)
      acc = target_.add(acc, target_.mul(e.c[i], images_[i]));
    return acc;
  }

  // this ∘ other (apply other first)
  GroupHom compose(const GroupHom& other) const {
    if (other.target_ != source_)
      throw ParseError("hom: composition domains do not match");
    std::vector<Element> images;
    for (const auto& im : other.images_) images.push_back(apply(im));
    return GroupHom(other.source_, target_, std::move(images));
  }

  Subgroup image() const { return Subgroup::from_generators(target_, images_); }

  Subgroup image_of(const Subgroup& s) const {
    std::vector<Element> gens;
    for (const auto& b : s.basis()) gens.push_back(apply(b));
    return Subgroup::from_generators(target_, gens);
  }

  bool is_automorphism() const {
    return source_ == target_ && is_well_defined() && image().is_whole();
  }

  bool operator==(const GroupHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }

private:
  AbelianGroup source_;
  AbelianGroup target_;
  std::vector<Element> images_;
};

}  // namespace abelian
