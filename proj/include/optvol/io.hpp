#ifndef OPTVOL_IO_HPP
#define OPTVOL_IO_HPP

#include "optvol/coloring.hpp"
#include "optvol/solution.hpp"

#include <optional>
#include <string>
#include <vector>

namespace optvol {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// decimal format with 17 significant digits (bit-exact round trip)
std::string fmt17(double v);
std::string fmt17(cplx v);

/// Coloring file: sections `arcs:`, `regions:`, `p:` and optionally `seed:`;
/// entries are `<id> <re a> <im a> <re b> <im b>` (p omits the id).
struct ColoringFile {
    ArcColors arcs;
    std::map<int, Parabolic> regions;
    std::optional<Parabolic> p;
    std::optional<std::pair<int, Parabolic>> seed;
};

ColoringFile read_coloring(const std::string& text);
std::string format_coloring(const ShadowColoring& sc);

std::map<int, cplx> read_solution(const std::string& text);
std::string format_solution(const SolutionVector& w);

std::vector<MoveDescriptor> read_plan(const std::string& text);

/// Crossing-list source text for a diagram (arc ids as stored).
std::string format_diagram(const LinkDiagram& d);

} // namespace optvol

#endif
