#include "htseq/bfile.hpp"

#include <fstream>
#include <sstream>

namespace htseq {

InitialSegment parse_bfile_text(const std::string& text) {
    InitialSegment seg;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    long prev_index = 0;
    bool have_prev = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string idx_s, val_s, extra;
        if (!(ls >> idx_s)) continue;  // blank line
        if (!(ls >> val_s) || (ls >> extra))
            throw ParseError("b-file line " + std::to_string(lineno) + ": expected 'index value'", 0);
        long idx;
        Rational val;
        try {
            idx = to_long(Integer(idx_s, 10));
            val = rat_parse(val_s);
        } catch (const std::exception&) {
            throw ParseError("b-file line " + std::to_string(lineno) + ": malformed entry", 0);
        }
        if (idx < 0)
            throw ParseError("b-file line " + std::to_string(lineno) + ": negative index", 0);
        if (have_prev && idx <= prev_index)
            throw ParseError("b-file line " + std::to_string(lineno) + ": indices must increase", 0);
        prev_index = idx;
        have_prev = true;
        seg.values.emplace_back(idx, CycloNumber(val));
    }
    return seg;
}

InitialSegment read_bfile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open value file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_bfile_text(ss.str());
}

}  // namespace htseq
