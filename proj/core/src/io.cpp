#include "zipfopt/io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace zipfopt {

namespace {

std::size_t parse_count(const std::string& token, const char* what) {
    std::size_t v = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || token.empty()) {
        throw ParseError(std::string("bad ") + what + " '" + token + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void write_edge_list(std::ostream& out, const AssociationMatrix& matrix) {
    out << matrix.forms() << ' ' << matrix.meanings() << '\n';
    for (std::size_t i = 0; i < matrix.forms(); ++i) {
        for (std::size_t j = 0; j < matrix.meanings(); ++j) {
            if (matrix.at(i, j)) out << i << ' ' << j << '\n';
        }
    }
}

AssociationMatrix read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("edge list is empty");
    strip_cr(line);
    std::istringstream header(line);
    std::string a, b, extra;
    if (!(header >> a >> b) || (header >> extra)) throw ParseError("edge list header must be 'V_S V_R'");
    const std::size_t forms = parse_count(a, "form count");
    const std::size_t meanings = parse_count(b, "meaning count");
    if (forms == 0 || meanings == 0) throw ParseError("edge list sizes must be positive");

    AssociationMatrix m(forms, meanings);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string si, sj;
        if (!(ss >> si >> sj) || (ss >> extra)) {
            throw ParseError("edge list line " + std::to_string(lineno) + " must be 'i j'");
        }
        const std::size_t i = parse_count(si, "form index");
        const std::size_t j = parse_count(sj, "meaning index");
        if (i >= forms || j >= meanings) {
            throw ParseError("edge list line " + std::to_string(lineno) + " is out of range");
        }
        if (m.at(i, j)) throw ParseError("edge list line " + std::to_string(lineno) + " repeats a link");
        m.flip(i, j);
    }
    return m;
}

void write_dense_csv(std::ostream& out, const AssociationMatrix& matrix) {
    for (std::size_t j = 0; j < matrix.meanings(); ++j) out << (j ? ",m" : "m") << j;
    out << '\n';
    for (std::size_t i = 0; i < matrix.forms(); ++i) {
        for (std::size_t j = 0; j < matrix.meanings(); ++j) {
            if (j) out << ',';
            out << (matrix.at(i, j) ? '1' : '0');
        }
        out << '\n';
    }
}

AssociationMatrix read_dense_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("dense CSV is empty");
    strip_cr(line);
    const std::size_t meanings = split(line, ',').size();
    AssociationMatrix::Grid grid;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != meanings) {
            throw ParseError("dense CSV row " + std::to_string(grid.size()) + " has " +
                             std::to_string(fields.size()) + " fields, expected " + std::to_string(meanings));
        }
        std::vector<int> row;
        for (const auto& f : fields) {
            if (f != "0" && f != "1") throw ParseError("dense CSV entry '" + f + "' is not 0 or 1");
            row.push_back(f == "1");
        }
        grid.push_back(std::move(row));
    }
    if (grid.empty()) throw ParseError("dense CSV has no rows");
    return AssociationMatrix(grid.size(), meanings, grid);
}

std::string format_number(std::optional<double> value) {
    if (!value) return "NA";
    return fmt::format("{}", *value);
}

std::string measures_csv_header() { return "h_s,h_s_given_r,i_sr,lambda,omega_energy"; }

std::string measures_csv_row(const MeasureSet& measures, double lambda) {
    return fmt::format("{},{},{},{},{}", format_number(measures.h_s), format_number(measures.h_s_given_r),
                       format_number(measures.i_sr), format_number(lambda),
                       format_number(omega_energy(measures, EnergyParams(lambda))));
}

std::string law_report_csv_header() {
    return "run_id,lambda,model,L,rho,rho_defined,alpha,gamma,delta,relation_residual,"
           "r2_alpha,r2_gamma,r2_delta,aic_powerlaw,aic_invfactorial";
}

std::string law_report_csv_row(const LawReport& r) {
    auto exponent = [](const std::optional<LogLogFit>& f) {
        return format_number(f ? std::optional<double>(f->exponent) : std::nullopt);
    };
    auto r2 = [](const std::optional<LogLogFit>& f) {
        return format_number(f ? std::optional<double>(f->r_squared) : std::nullopt);
    };
    std::optional<double> aic_pl, aic_if;
    if (r.rank_models) {
        aic_pl = r.rank_models->powerlaw_aic;
        aic_if = r.rank_models->inverse_factorial_aic;
    }
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.run_id, format_number(r.lambda),
                       to_char(r.model), r.lexicon_size, format_number(r.correlation.rho),
                       r.correlation.defined() ? 1 : 0, exponent(r.fit.alpha), exponent(r.fit.gamma),
                       exponent(r.fit.delta), format_number(r.fit.relation_residual), r2(r.fit.alpha),
                       r2(r.fit.gamma), r2(r.fit.delta), format_number(aic_pl), format_number(aic_if));
}

std::string trace_csv_header() { return "step,omega"; }

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << trace_csv_header() << '\n';
    for (const auto& t : trace) out << t.step << ',' << format_number(t.omega) << '\n';
}

}  // namespace zipfopt
