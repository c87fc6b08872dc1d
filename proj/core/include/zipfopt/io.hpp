#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zipfopt/association_matrix.hpp"
#include "zipfopt/laws.hpp"
#include "zipfopt/measures.hpp"
#include "zipfopt/optimizer.hpp"

namespace zipfopt {

/// Malformed input in one of the text formats below.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Edge list: a header line "V_S V_R" followed by one "i j" line per link
// (0-based indices, row-major order).
void write_edge_list(std::ostream& out, const AssociationMatrix& matrix);
AssociationMatrix read_edge_list(std::istream& in);

// Dense CSV: header "m0,m1,...", then one row of 0/1 values per form.
void write_dense_csv(std::ostream& out, const AssociationMatrix& matrix);
AssociationMatrix read_dense_csv(std::istream& in);

/// Shortest text that reads back to the same double; "NA" when empty.
std::string format_number(std::optional<double> value);

std::string measures_csv_header();
std::string measures_csv_row(const MeasureSet& measures, double lambda);

std::string law_report_csv_header();
std::string law_report_csv_row(const LawReport& report);

std::string trace_csv_header();
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace zipfopt
