#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hpclab/numeric.hpp"
#include "hpclab/rng.hpp"

namespace hpclab {

// Samplers are written against this interface: every random decision is a
// uniform pick among `arity` branches. The same sampler body then runs in two
// modes. SeededChooser draws from a PRNG stream; EnumChooser is driven by
// for_each_outcome, which walks the complete decision tree and reports the
// exact rational weight of every leaf. The branch order of the sampler body
// is the canonical decision-tree order.
class SeededChooser {
 public:
  explicit SeededChooser(Rng rng) : rng_(rng) {}
  std::size_t pick(std::size_t arity) {
    if (arity == 0) throw std::invalid_argument("pick with arity 0");
    return static_cast<std::size_t>(rng_.uniform(arity));
  }

 private:
  Rng rng_;
};

class EnumChooser {
 public:
  std::size_t pick(std::size_t arity) {
    if (arity == 0) throw std::invalid_argument("pick with arity 0");
    if (depth_ < script_.size()) {
      if (arities_[depth_] != arity)
        throw std::logic_error("enumeration replay diverged: sampler is not a fixed decision tree");
      return script_[depth_++];
    }
    script_.push_back(0);
    arities_.push_back(arity);
    ++depth_;
    return 0;
  }

  Rat weight() const {
    Rat w(1);
    for (std::size_t a : arities_) w /= static_cast<unsigned long>(a);
    return w;
  }

  // Advances to the next root-to-leaf path. False when exhausted.
  bool advance() {
    while (!script_.empty()) {
      if (++script_.back() < arities_.back()) {
        depth_ = 0;
        return true;
      }
      script_.pop_back();
      arities_.pop_back();
    }
    return false;
  }

  void rewind() { depth_ = 0; }

 private:
  std::vector<std::size_t> script_;
  std::vector<std::size_t> arities_;
  std::size_t depth_ = 0;
};

// Runs `body` once per leaf of its decision tree; `on_leaf` receives the
// exact probability of that leaf. `body` must be a pure function of its
// choices (same pick arities along a replayed prefix).
template <class Body>
void for_each_outcome(Body&& body, const std::function<void(const Rat&)>& on_leaf) {
  EnumChooser chooser;
  for (;;) {
    body(chooser);
    on_leaf(chooser.weight());
    if (!chooser.advance()) return;
  }
}

}  // namespace hpclab
