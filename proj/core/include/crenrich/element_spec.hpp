#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crenrich/elements.hpp"

namespace crenrich {

enum class ElementKind { CR, AF3, GN, PN, Custom };

/// Parsed element selection: "cr", "af3", "gn:<gamma>", "pn:<mu>" or "custom".
struct ElementSpec {
  ElementKind kind = ElementKind::CR;
  double parameter = 0.0;
  std::optional<FunctionalTriple> custom;  // set for ElementKind::Custom

  /// `custom_triple` is consulted only for "custom" (see parse_functional_triple).
  /// Throws ConfigError.
  static ElementSpec parse(std::string_view text, std::string_view custom_triple = {});

  std::string label() const;
};

/// A ready-to-use element: its ordered DOFs (three edge means, then the three
/// enriched functionals if any), the segment rules they need, and a basis
/// evaluator dual to those DOFs. The basis lives on barycentric coordinates and
/// is shared by every triangle of a mesh. Cheap to copy; immutable.
class Element {
 public:
  /// Builds from a spec. Throws InadmissibleFunctionals or DomainError.
  static Element make(const ElementSpec& spec, int segment_points = kDefaultSegmentPoints);

  const ElementSpec& spec() const { return state_->spec; }
  const std::string& label() const { return state_->label; }
  std::size_t dof_count() const { return state_->functionals.size(); }
  const std::vector<DofFunctional>& functionals() const { return state_->functionals; }
  const FunctionalRules& rules() const { return state_->rules; }

  /// Basis values in DOF order; only the first dof_count() entries are used.
  std::array<double, 6> basis(const Barycentric& b) const;

  /// Generic-pipeline element backing AF3 / custom; null for CR, GN and PN.
  const EnrichedElement* generic() const;

 private:
  struct CrShape {};
  using Basis = std::variant<CrShape, EnrichedElement, GnBasis, PnBasis>;

  struct State {
    ElementSpec spec;
    std::string label;
    std::vector<DofFunctional> functionals;
    FunctionalRules rules;
    Basis basis;
  };

  explicit Element(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

}  // namespace crenrich
