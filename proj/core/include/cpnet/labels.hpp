// Core/periphery label vectors (1 = core, 0 = periphery) with a cached core
// size, plus the misclassification rate and label-file I/O.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cpnet {

class LabelAssignment {
 public:
  explicit LabelAssignment(std::vector<std::uint8_t> bits);
  LabelAssignment(int n, bool all_core);

  static LabelAssignment all_periphery(int n) { return {n, false}; }

  int size() const { return static_cast<int>(bits_.size()); }
  int core_size() const { return k_; }
  double core_fraction() const {
    return static_cast<double>(k_) / static_cast<double>(size());
  }
  bool is_core(int i) const { return bits_[i] != 0; }

  void set(int i, bool core);
  void toggle(int i) { set(i, !is_core(i)); }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const LabelAssignment&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  int k_ = 0;
};

// Fraction of positions where the two assignments disagree. No label-swap
// ambiguity: core and periphery are not interchangeable roles.
double misclassification(const LabelAssignment& estimate,
                         const LabelAssignment& truth);

// One "id<TAB>0|1" line per node.
void write_labels(const LabelAssignment& c, std::ostream& out,
                  const std::vector<std::string>* ids = nullptr);

// Reads a labels file back against a known id ordering; every node must be
// covered exactly once.
LabelAssignment read_labels(std::istream& in,
                            const std::vector<std::string>& ids);

}  // namespace cpnet
