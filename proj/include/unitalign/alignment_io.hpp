#pragma once

#include <string>

#include "unitalign/alignment.hpp"

namespace unitalign {

// TSV form: '#' header comments carrying the ontology identifiers, then one
// cell per line: entity1 TAB entity2 TAB = TAB confidence TAB evidence.
std::string writeAlignmentTsv(const Alignment& alignment);
Alignment readAlignmentTsv(const std::string& text);

// Alignment-format XML: an <Alignment> element with <onto1>/<onto2> and one
// <map><Cell> per correspondence holding <entity1>, <entity2>, <relation>
// (always "="), <measure>, and a nonstandard <evidence>.
std::string writeAlignmentXml(const Alignment& alignment);
Alignment readAlignmentXml(const std::string& text);

// Reads either format, sniffing XML by a leading '<'.
Alignment readAlignment(const std::string& text);

}  // namespace unitalign
