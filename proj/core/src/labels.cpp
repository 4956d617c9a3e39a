#include "cpnet/labels.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cpnet {

LabelAssignment::LabelAssignment(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("labels: empty assignment");
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("labels: entries must be 0 or 1");
    k_ += b;
  }
}

LabelAssignment::LabelAssignment(int n, bool all_core)
    : bits_(n, all_core ? 1 : 0), k_(all_core ? n : 0) {
  if (n < 1) throw std::invalid_argument("labels: empty assignment");
}

void LabelAssignment::set(int i, bool core) {
  const std::uint8_t nv = core ? 1 : 0;
  if (bits_[i] == nv) return;
  k_ += core ? 1 : -1;
  bits_[i] = nv;
}

double misclassification(const LabelAssignment& estimate,
                         const LabelAssignment& truth) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("misclassification: length mismatch");
  int wrong = 0;
  for (int i = 0; i < estimate.size(); ++i)
    wrong += estimate.is_core(i) != truth.is_core(i);
  return static_cast<double>(wrong) / static_cast<double>(estimate.size());
}

void write_labels(const LabelAssignment& c, std::ostream& out,
                  const std::vector<std::string>* ids) {
  for (int i = 0; i < c.size(); ++i) {
    if (ids)
      out << (*ids)[i];
    else
      out << i;
    out << '\t' << (c.is_core(i) ? 1 : 0) << '\n';
  }
}

LabelAssignment read_labels(std::istream& in,
                            const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) index[ids[i]] = i;

  std::vector<std::uint8_t> bits(ids.size(), 0);
  std::vector<bool> seen(ids.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string id, value;
    if (!(ss >> id)) continue;
    if (id[0] == '#') continue;
    if (!(ss >> value) || (value != "0" && value != "1"))
      throw std::runtime_error("labels: line " + std::to_string(line_no) +
                               ": expected \"id<TAB>0|1\"");
    const auto it = index.find(id);
    if (it == index.end())
      throw std::runtime_error("labels: line " + std::to_string(line_no) +
                               ": unknown node id \"" + id + "\"");
    if (seen[it->second])
      throw std::runtime_error("labels: line " + std::to_string(line_no) +
                               ": duplicate node id \"" + id + "\"");
    seen[it->second] = true;
    bits[it->second] = value == "1" ? 1 : 0;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw std::runtime_error("labels: node \"" + ids[i] + "\" missing");
  return LabelAssignment(std::move(bits));
}

}  // namespace cpnet
