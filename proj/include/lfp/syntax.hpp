#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lfp/term.hpp"

namespace lfp {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnboundConstant : public SyntaxError {
 public:
  UnboundConstant(const std::string& name, std::size_t line, std::size_t column);
  const std::string& constant() const { return name_; }

 private:
  std::string name_;
};

// Named constants (uppercase-initial) defined in a .lam file, in definition order.
class Definitions {
 public:
  void define(const std::string& name, Term t);
  const Term* find(const std::string& name) const;
  const std::vector<std::pair<std::string, Term>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Term>> entries_;
  std::map<std::string, std::size_t> index_;
};

// Grammar:
//   term := ('\' | 'λ') ident+ '.' term | atom+ [lam]
//   atom := ident | constant | '(' term ')'
// Built-in constants: Y, THETA, Y_<n>.
Term parse(std::string_view src, const Definitions& defs = {});

// Lines of `NAME = term`; '#' starts a comment. Later lines may use earlier names.
Definitions parse_definitions(std::string_view src, const Definitions& base = {});

bool is_identifier(std::string_view s);
bool is_constant_name(std::string_view s);
bool is_builtin_constant(std::string_view s);

// Renders tracked variables as ⟨υ:k⟩, k indexing `tags` (appended on first sight).
class DescriptorTable {
 public:
  std::size_t index_of(const TagPtr& tag);
  const std::vector<TagPtr>& tags() const { return tags_; }

 private:
  std::vector<TagPtr> tags_;
};

// Minimal parentheses; throws std::invalid_argument on tracked variables.
std::string print(const Term& t);
std::string print(const Term& t, DescriptorTable& table);

}  // namespace lfp
