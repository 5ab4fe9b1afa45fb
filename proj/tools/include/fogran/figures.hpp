#pragma once

#include "fogran/scheme.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fogran {

// One curve family: column 0 is the x axis (M, or R_sbs for the region plot).
struct FigureTable {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<Rational>>> rows;
};

const std::vector<std::string>& figure_ids();
// Throws DomainError for an unknown id.
FigureTable make_figure(const std::string& id);

// Baseline without inter-file coded placement: placement over all N files, t = HM/N.
std::vector<MemoryLoadPoint> man_placement_points(const Topology& topo, LinkClass c);

// Each value as a 12-significant-digit decimal followed by its exact p/q column.
void write_csv(const FigureTable& table, std::ostream& out);

}  // namespace fogran
