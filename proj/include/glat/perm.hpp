#pragma once

#include <numeric>
#include <vector>

#include "glat/numeric.hpp"

namespace glat {

// Permutation of {0..degree-1} stored as an image array.
// Composition convention: (f.after(g))(x) = f(g(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v]) throw input_error("permutation is not a bijection");
      seen[v] = true;
    }
  }
  static Perm identity(int degree) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    return Perm(std::move(im));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  Perm after(const Perm& g) const {
    std::vector<int> im(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) im[x] = img_[g.img_[x]];
    Perm p;
    p.img_ = std::move(im);
    return p;
  }
  Perm inverse() const {
    std::vector<int> im(img_.size());
    for (size_t x = 0; x < img_.size(); ++x) im[img_[x]] = static_cast<int>(x);
    Perm p;
    p.img_ = std::move(im);
    return p;
  }
  bool is_identity() const {
    for (size_t x = 0; x < img_.size(); ++x)
      if (img_[x] != static_cast<int>(x)) return false;
    return true;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

}  // namespace glat
