#include "pkfold/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace pkfold {

std::string emit_arcs(const Structure& s) {
    std::ostringstream os;
    os << "n " << s.length() << "\n";
    for (const Arc& a : s.arcs()) os << a.i << " " << a.j << "\n";
    return os.str();
}

Structure parse_arcs(const std::string& text, DiagramParams params) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0, n = -1;
    std::vector<Arc> arcs;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "n" || n < 0)
                throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 'n <length>'");
            continue;
        }
        Arc a;
        std::string extra;
        if (!(ls >> a.i >> a.j) || (ls >> extra))
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 'i j'");
        if (!arcs.empty() && a.i < arcs.back().i)
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": arcs not ascending by i");
        arcs.push_back(a);
    }
    if (n < 0) throw Error(Errc::ParseError, "missing 'n <length>' header");
    return Structure::make(n, arcs, params);
}

std::string parse_sequence(const std::string& text) {
    std::istringstream in(text);
    std::string line, seq;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '>') {
            if (seq.empty()) continue; // leading header
            break;                     // one record only
        }
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (u == 'T') u = 'U';
            seq.push_back(u);
        }
    }
    return seq;
}

std::string read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open sequence file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sequence(buf.str());
}

std::string bracket_string(const Structure& s) {
    static const char open_of[3] = {'(', '[', '{'};
    static const char close_of[3] = {')', ']', '}'};
    std::string out(static_cast<size_t>(s.length()), '.');
    std::vector<std::vector<Arc>> family(3);
    for (const Arc& a : s.arcs()) { // arcs() is sorted by i
        int f = 0;
        for (; f < 3; ++f) {
            bool clash = false;
            for (const Arc& b : family[f])
                if (crossing(a, b)) clash = true;
            if (!clash) break;
        }
        if (f == 3)
            throw Error(Errc::BracketOverflow, "arc " + to_string(a) + " crosses all three families");
        family[f].push_back(a);
        out[a.i - 1] = open_of[f];
        out[a.j - 1] = close_of[f];
    }
    return out;
}

} // namespace pkfold
