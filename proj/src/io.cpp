#include "optvol/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace optvol {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw parse_error("cannot write " + path);
    out << content;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt17(cplx v) { return fmt17(v.real()) + " " + fmt17(v.imag()); }

namespace {

std::string strip_comment(std::string line) {
    const auto hash = line.find('#');
    if (hash != std::string::npos)
        line = line.substr(0, hash);
    return line;
}

Parabolic parse_color(std::istringstream& ls, const std::string& where) {
    double ra, ia, rb, ib;
    if (!(ls >> ra >> ia >> rb >> ib))
        throw parse_error("expected four floats in " + where);
    return Parabolic{cplx(ra, ia), cplx(rb, ib)};
}

} // namespace

ColoringFile read_coloring(const std::string& text) {
    ColoringFile out;
    std::istringstream in(text);
    std::string line;
    enum class Section { none, arcs, regions, p, seed } section = Section::none;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        if (first == "arcs:") {
            section = Section::arcs;
            continue;
        }
        if (first == "regions:") {
            section = Section::regions;
            continue;
        }
        if (first == "p:") {
            section = Section::p;
            continue;
        }
        if (first == "seed:") {
            section = Section::seed;
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);
        switch (section) {
        case Section::arcs: {
            const int id = std::stoi(first);
            out.arcs[id] = parse_color(ls, where);
            break;
        }
        case Section::regions: {
            const int id = std::stoi(first);
            out.regions[id] = parse_color(ls, where);
            break;
        }
        case Section::p: {
            std::istringstream full(first + " " + std::string(std::istreambuf_iterator<char>(ls),
                                                              {}));
            out.p = parse_color(full, where);
            break;
        }
        case Section::seed: {
            const int id = std::stoi(first);
            out.seed = {id, parse_color(ls, where)};
            break;
        }
        case Section::none:
            throw parse_error(where + ": entry before any section header");
        }
    }
    if (out.arcs.empty())
        throw parse_error("coloring file has no arcs section");
    return out;
}

std::string format_coloring(const ShadowColoring& sc) {
    std::ostringstream os;
    os << "arcs:\n";
    for (const auto& [id, c] : sc.arcs)
        os << id << " " << fmt17(c.alpha) << " " << fmt17(c.beta) << "\n";
    os << "regions:\n";
    for (const auto& [id, c] : sc.regions)
        os << id << " " << fmt17(c.alpha) << " " << fmt17(c.beta) << "\n";
    os << "p:\n" << fmt17(sc.p.alpha) << " " << fmt17(sc.p.beta) << "\n";
    return os.str();
}

std::map<int, cplx> read_solution(const std::string& text) {
    std::map<int, cplx> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_comment(line);
        std::istringstream ls(line);
        int id;
        double re, im;
        if (!(ls >> id))
            continue;
        if (!(ls >> re >> im))
            throw parse_error("line " + std::to_string(line_no) +
                              ": expected `<region> <re> <im>`");
        out[id] = cplx(re, im);
    }
    if (out.empty())
        throw parse_error("empty solution file");
    return out;
}

std::string format_solution(const SolutionVector& w) {
    std::ostringstream os;
    os << "# region re im\n";
    for (const auto& [id, v] : w.values)
        os << id << " " << fmt17(v) << "\n";
    return os.str();
}

std::string format_diagram(const LinkDiagram& d) {
    std::ostringstream os;
    for (const auto& c : d.crossings()) {
        os << (c.sign == Sign::positive ? "X+" : "X-");
        for (int s = 0; s < 4; ++s)
            os << " " << c.arc[size_t(s)];
        os << "\n";
    }
    return os.str();
}

std::vector<MoveDescriptor> read_plan(const std::string& text) {
    std::vector<MoveDescriptor> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        std::istringstream probe(line);
        std::string tok;
        if (!(probe >> tok))
            continue;
        out.push_back(parse_move_line(line));
    }
    return out;
}

} // namespace optvol
