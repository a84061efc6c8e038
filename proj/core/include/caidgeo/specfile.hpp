#pragma once

#include <optional>
#include <string>

#include "caidgeo/channel.hpp"
#include "caidgeo/polyhedron.hpp"
#include "caidgeo/quantum.hpp"

namespace caidgeo {

/// Parsed channel/constraint description. Exactly one of `classical` or
/// `quantum` is set; `lam` is the probability simplex intersected with the
/// file's constraint blocks.
struct SpecFile {
  std::string name;
  std::optional<Channel> classical;
  std::optional<CQChannel> quantum;
  Polyhedron lam;
};

/// JSON schema, version 1:
///   { "version": 1, "kind": "classical" | "classical-quantum",
///     "matrix": [[...], ...]                  (classical, row-major)
///     "operators": [ [[[re,im], ...], ...] ]  (quantum, one d x d per input)
///     "constraints": {"A": [[...]], "b": [...], "Aeq": [[...]], "beq": [...]}
///     "input_labels": [...], "output_labels": [...], "name": "...",
///     "precise": true }                       (numbers as decimal strings)
/// Parse failures throw std::invalid_argument with a byte-offset diagnostic.
SpecFile parse_spec_file(const std::string& path);
SpecFile parse_spec_text(const std::string& text, const std::string& origin);

}  // namespace caidgeo
