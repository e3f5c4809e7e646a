#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cosmo::sym {

/// Ordered, immutable list of variable names. Polynomials refer to variables
/// by their index here; the order also fixes the graded-lex monomial order.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<int> find(const std::string& name) const;
  int index(const std::string& name) const;  // throws UnknownVariable

  bool operator==(const VarTable& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> lookup_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_table(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

}  // namespace cosmo::sym
