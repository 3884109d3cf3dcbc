#ifndef COXSG_IO_HPP
#define COXSG_IO_HPP

#include <string>

#include "coxsg/separability.hpp"
#include "coxsg/subgroup_graph.hpp"

namespace coxsg {

// Structured graph document: schema, stage, basepoint, optional terminal,
// vertices with classes, edges with labels and provenance.  Vertex ids are
// not contractual; canonical relabeling defines graph equality.
std::string graph_to_json(const SubgroupGraph& g);
SubgroupGraph graph_from_json(const CoxeterPresentation& p, const std::string& text);

std::string graph_to_dot(const SubgroupGraph& g);

// One line per generator `a_i -> (v1 v2)(...)`, then degree, O_H and T_w.
std::string quotient_to_text(const FiniteQuotient& q);

} // namespace coxsg

#endif
