#include "pkfold/energy.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace pkfold {

std::string energy_to_string(Energy e) {
    std::string sign = e < 0 ? "-" : "";
    long long a = e < 0 ? -e : e;
    std::ostringstream os;
    os << sign << a / 100 << "." << (a % 100 < 10 ? "0" : "") << a % 100;
    return os.str();
}

Energy energy_from_string(const std::string& s) {
    std::string t = s;
    if (t.empty()) throw Error(Errc::ParseError, "empty energy value");
    bool neg = false;
    size_t pos = 0;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        pos = 1;
    }
    long long units = 0, cents = 0;
    size_t digits = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
        units = units * 10 + (t[pos] - '0');
        ++pos;
        ++digits;
    }
    if (digits == 0) throw Error(Errc::ParseError, "bad energy value '" + s + "'");
    if (pos < t.size()) {
        if (t[pos] != '.') throw Error(Errc::ParseError, "bad energy value '" + s + "'");
        ++pos;
        size_t frac = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
            cents = cents * 10 + (t[pos] - '0');
            ++pos;
            ++frac;
        }
        if (pos != t.size() || frac == 0 || frac > 2)
            throw Error(Errc::ParseError, "energy '" + s + "' needs 1-2 decimals (0.01 granularity)");
        if (frac == 1) cents *= 10;
    }
    Energy v = units * 100 + cents;
    return neg ? -v : v;
}

bool EnergyModel::admissible(char x, char y) const {
    for (const std::string& p : pairs)
        if ((p[0] == x && p[1] == y) || (p[0] == y && p[1] == x)) return true;
    return false;
}

EnergyModel parse_energy_config(const std::string& text) {
    EnergyModel em;
    std::map<std::string, Energy*> keys = {
        {"stack_bonus", &em.stack_bonus},
        {"hairpin_base", &em.hairpin_base},
        {"hairpin_per_unpaired", &em.hairpin_per_unpaired},
        {"interior_base", &em.interior_base},
        {"interior_per_unpaired", &em.interior_per_unpaired},
        {"multi_penalty", &em.multi_penalty},
        {"closing_pair", &em.closing_pair},
        {"unpaired_multi", &em.unpaired_multi},
        {"unpaired_pk", &em.unpaired_pk},
        {"unpaired_exterior", &em.unpaired_exterior},
        {"pk_penalty", &em.pk_penalty},
        {"pk_stack_bonus", &em.pk_stack_bonus},
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t x = s.find_first_not_of(" \t");
            size_t y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        key = strip(key);
        val = strip(val);
        if (key == "pairs") {
            em.pairs.clear();
            std::istringstream ps(val);
            std::string p;
            while (std::getline(ps, p, ',')) {
                if (p.size() != 2) throw Error(Errc::ParseError, "bad pair '" + p + "'");
                em.pairs.push_back(p);
            }
            continue;
        }
        auto it = keys.find(key);
        if (it == keys.end())
            throw Error(Errc::UnknownKey, "line " + std::to_string(lineno) + ": '" + key + "'");
        *it->second = energy_from_string(val);
    }
    return em;
}

EnergyModel load_energy_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open energy config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_energy_config(buf.str());
}

void check_alphabet(const std::string& seq) {
    if (seq.empty()) throw Error(Errc::InvalidAlphabet, "empty sequence");
    for (size_t x = 0; x < seq.size(); ++x) {
        char c = seq[x];
        if (c != 'A' && c != 'C' && c != 'G' && c != 'U')
            throw Error(Errc::InvalidAlphabet,
                        "character '" + std::string(1, c) + "' at position " + std::to_string(x + 1));
    }
}

Energy loop_energy(const Structure& s, const LoopDecomposition& dec, const std::string& seq,
                   const EnergyModel& em) {
    if (static_cast<int>(seq.size()) != s.length())
        throw Error(Errc::InvalidParams, "sequence length mismatch");
    for (const Arc& a : s.arcs())
        if (!em.admissible(seq[a.i - 1], seq[a.j - 1]))
            throw Error(Errc::InadmissiblePair, to_string(a) + " over " + seq[a.i - 1] + seq[a.j - 1]);

    Energy total = 0;
    // stacked pairs, priced by the color of the stack's core arc
    std::map<Arc, size_t> arc_index;
    for (size_t x = 0; x < s.arcs().size(); ++x) arc_index[s.arcs()[x]] = x;
    for (const Stack& st : maximal_stacks(s)) {
        Color c = dec.arc_colors[arc_index[st.outer()]];
        total += (st.len - 1) * (c == Color::Red ? em.pk_stack_bonus : em.stack_bonus);
    }
    for (const Loop& lp : dec.loops) {
        switch (lp.kind) {
            case LoopKind::Hairpin: {
                const Arc& a = lp.closing[0];
                total += em.hairpin(a.j - a.i - 1);
                break;
            }
            case LoopKind::Interior: {
                const Arc& outer = lp.closing[0].i < lp.closing[1].i ? lp.closing[0] : lp.closing[1];
                const Arc& inner = lp.closing[0].i < lp.closing[1].i ? lp.closing[1] : lp.closing[0];
                total += em.interior(inner.i - outer.i - 1, outer.j - inner.j - 1);
                break;
            }
            case LoopKind::Multi: {
                int unpaired = 0;
                for (auto& iv : lp.intervals) unpaired += iv.second - iv.first + 1;
                // one closing pair for the boundary arc plus one per nested component
                Energy closings = 1 + static_cast<Energy>(lp.component_spans.size());
                total += em.multi_penalty + em.closing_pair * closings + em.unpaired_multi * unpaired;
                break;
            }
            case LoopKind::Pseudoknot: {
                int unpaired = 0;
                for (auto& iv : lp.intervals) unpaired += iv.second - iv.first + 1;
                total += em.pk_penalty + em.unpaired_pk * unpaired;
                break;
            }
        }
    }
    int exterior = 0;
    for (int v = 1; v <= s.length(); ++v)
        if (!s.paired(v) && dec.vertex_loop[v] == -1) ++exterior;
    total += em.unpaired_exterior * exterior;
    return total;
}

Energy loop_energy(const Structure& s, const std::string& seq, const EnergyModel& em) {
    return loop_energy(s, loop_decompose(s), seq, em);
}

} // namespace pkfold
