#pragma once

#include <string>

#include "nonsig/bell.hpp"
#include "nonsig/box.hpp"

namespace nonsig {

/// Box file schema: {"n": int, "m": int, "probs": [x][y][a][b]} with 0-based
/// array axes.  The tripartite schema carries a trailing [g] axis.  Readers
/// validate the full box invariants and report the offending field on
/// rejection; parse errors carry the byte position.
Box read_box_json(const std::string& path);
void write_box_json(const std::string& path, const Box& box);
Box parse_box_json(const std::string& text);

TripartiteBox read_tripartite_json(const std::string& path);
void write_tripartite_json(const std::string& path, const TripartiteBox& tri);
TripartiteBox parse_tripartite_json(const std::string& text);

/// Functional schema: {"n", "m", "correlators": [x][y]} or
/// {"n", "m", "coeffs": [x][y][a][b]}.
BellFunctional read_functional_json(const std::string& path);
void write_functional_json(const std::string& path, const BellFunctional& f);
BellFunctional parse_functional_json(const std::string& text);

}  // namespace nonsig
