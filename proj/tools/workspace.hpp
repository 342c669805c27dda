#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skew/convolution.hpp"
#include "skew/functional.hpp"
#include "skew/s_construction.hpp"
#include "skew/structure.hpp"

namespace skew::cli {

/// Named entities from one JSON document. Every cross-reference has been
/// resolved and every declared law re-checked.
struct Workspace {
  std::map<std::string, FinStruct> structures;
  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, Functional> functionals;
  /// Source expression of each functional, for printing.
  std::map<std::string, std::string> expressions;
  std::map<std::string, std::string> space_values;
  std::map<std::string, std::string> action_values;
  std::map<std::string, std::string> scheme_component;
  std::map<std::string, std::shared_ptr<const ActionSystem>> actions;
  std::map<std::string, IndexScheme> schemes;

  /// structure -> laws the laws suite checks beyond the declared flags.
  std::map<std::string, std::vector<Law>> extra_laws;
  ConvKind conv_kind = ConvKind::join;
  Budget budget;

  std::size_t entity_count() const;
};

/// Throws InputError whose message starts with the JSON pointer of the
/// offending field.
Workspace parse_workspace(const std::string& text);
Workspace load_workspace(const std::filesystem::path& path);

/// The workspace as a JSON document that parses back to the same workspace.
std::string dump_workspace(const Workspace& ws);

/// "nu({x1: 1, x2: 0})" or "nu([1, 0])" -> value name.
std::string eval_expression(const Workspace& ws, const std::string& expr);

}  // namespace skew::cli
