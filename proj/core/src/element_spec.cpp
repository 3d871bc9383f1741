#include "crenrich/element_spec.hpp"

#include <charconv>

namespace crenrich {

namespace {

double parse_parameter(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("bad element parameter in '" + std::string(whole) + "'");
  }
  return value;
}

std::string format_parameter(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ElementSpec ElementSpec::parse(std::string_view text, std::string_view custom_triple) {
  ElementSpec spec;
  if (text == "cr") {
    spec.kind = ElementKind::CR;
  } else if (text == "af3") {
    spec.kind = ElementKind::AF3;
  } else if (text.starts_with("gn:")) {
    spec.kind = ElementKind::GN;
    spec.parameter = parse_parameter(text.substr(3), text);
  } else if (text.starts_with("pn:")) {
    spec.kind = ElementKind::PN;
    spec.parameter = parse_parameter(text.substr(3), text);
  } else if (text == "custom") {
    if (custom_triple.empty()) {
      throw ConfigError("element 'custom' needs a functional triple (custom = ...)");
    }
    spec.kind = ElementKind::Custom;
    spec.custom = parse_functional_triple(custom_triple);
  } else {
    throw ConfigError("unknown element '" + std::string(text) +
                      "' (expected cr, af3, gn:<gamma>, pn:<mu> or custom)");
  }
  if ((spec.kind == ElementKind::GN || spec.kind == ElementKind::PN) && !(spec.parameter > -1.0)) {
    throw ConfigError("element '" + std::string(text) + "': parameter must exceed -1");
  }
  return spec;
}

std::string ElementSpec::label() const {
  switch (kind) {
    case ElementKind::CR: return "cr";
    case ElementKind::AF3: return "af3";
    case ElementKind::GN: return "gn:" + format_parameter(parameter);
    case ElementKind::PN: return "pn:" + format_parameter(parameter);
    case ElementKind::Custom: return "custom";
  }
  return "?";
}

Element Element::make(const ElementSpec& spec, int segment_points) {
  std::vector<DofFunctional> functionals = {DofFunctional::edge_mean(0), DofFunctional::edge_mean(1),
                                            DofFunctional::edge_mean(2)};
  std::optional<FunctionalTriple> enriched;
  switch (spec.kind) {
    case ElementKind::CR: break;
    case ElementKind::AF3: enriched = af3_functionals(); break;
    case ElementKind::GN: enriched = gn_functionals(spec.parameter); break;
    case ElementKind::PN: enriched = pn_functionals(spec.parameter); break;
    case ElementKind::Custom: enriched = spec.custom.value(); break;
  }
  if (enriched) functionals.insert(functionals.end(), enriched->begin(), enriched->end());

  FunctionalRules rules = FunctionalRules::for_functionals(functionals, segment_points);
  const std::string label = spec.label();
  Basis basis = CrShape{};
  switch (spec.kind) {
    case ElementKind::CR: break;
    case ElementKind::GN:
      if (std::abs(spec.parameter) < 1e-6) {
        // The midsegment family degenerates at gamma = 0; report it through the
        // generic admissibility test so callers see the determinant.
        basis = EnrichedElement::build(*enriched, Triangle::reference(), rules, label);
      }
      basis = GnBasis(spec.parameter);
      break;
    case ElementKind::PN: basis = PnBasis(spec.parameter); break;
    case ElementKind::AF3:
    case ElementKind::Custom:
      basis = EnrichedElement::build(*enriched, Triangle::reference(), rules, label);
      break;
  }
  return Element(std::make_shared<const State>(
      State{spec, label, std::move(functionals), std::move(rules), std::move(basis)}));
}

std::array<double, 6> Element::basis(const Barycentric& b) const {
  std::array<double, 6> out{};
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, CrShape>) {
          for (std::size_t i = 0; i < 3; ++i) out[i] = cr_basis(i, b);
        } else {
          const BasisEval e = shape.evaluate(b);
          for (std::size_t i = 0; i < 3; ++i) {
            out[i] = e.rho[i];
            out[3 + i] = e.tau[i];
          }
        }
      },
      state_->basis);
  return out;
}

const EnrichedElement* Element::generic() const {
  return std::get_if<EnrichedElement>(&state_->basis);
}

}  // namespace crenrich
