#include "revsplit/dataio.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace revsplit {

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    // ignore a trailing blank line
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line, size_t col,
                             const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": column " + std::to_string(col) +
                     ": " + what);
}

// Shared grid reader for the similarity and bids CSV formats.
struct Grid {
    std::vector<std::string> reviewer_ids, paper_ids;
    std::vector<std::vector<std::string>> cells;  // one row per reviewer
};

Grid read_grid(const std::string& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError(path + ": empty file");
    Grid g;
    const std::vector<std::string> header = split_line(lines[0], ',');
    if (header.empty() || header[0] != "reviewer_id")
        parse_fail(path, 1, 1, "header must start with 'reviewer_id'");
    g.paper_ids.assign(header.begin() + 1, header.end());
    const size_t width = header.size();
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> fields = split_line(lines[i], ',');
        if (fields.size() != width)
            parse_fail(path, i + 1, fields.size(),
                       "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()));
        g.reviewer_ids.push_back(fields[0]);
        g.cells.emplace_back(fields.begin() + 1, fields.end());
    }
    return g;
}

}  // namespace

SimilarityMatrix load_similarity_csv(const std::string& path) {
    const Grid g = read_grid(path);
    SimilarityMatrix s;
    s.n_reviewers = static_cast<int>(g.reviewer_ids.size());
    s.n_papers = static_cast<int>(g.paper_ids.size());
    s.reviewer_ids = g.reviewer_ids;
    s.paper_ids = g.paper_ids;
    s.scores.reserve(static_cast<size_t>(s.n_reviewers) * s.n_papers);
    for (size_t r = 0; r < g.cells.size(); ++r)
        for (size_t c = 0; c < g.cells[r].size(); ++c) {
            const std::string& cell = g.cells[r][c];
            errno = 0;
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || errno != 0)
                parse_fail(path, r + 2, c + 2, "not a number: '" + cell + "'");
            s.scores.push_back(v);
        }

    const std::vector<Violation> violations = validate(s);
    if (!violations.empty()) {
        std::string msg = path + ": invalid similarity matrix:";
        for (const Violation& v : violations) {
            msg += "\n  ";
            if (v.row >= 0) msg += "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ") ";
            msg += v.what;
        }
        throw ParseError(msg);
    }
    return s;
}

void save_similarity_csv(const SimilarityMatrix& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "reviewer_id";
    for (int p = 0; p < s.n_papers; ++p)
        out << ',' << (p < static_cast<int>(s.paper_ids.size()) ? s.paper_ids[p]
                                                                : "p" + std::to_string(p));
    out << '\n';
    char buf[32];
    for (int r = 0; r < s.n_reviewers; ++r) {
        out << (r < static_cast<int>(s.reviewer_ids.size()) ? s.reviewer_ids[r]
                                                            : "r" + std::to_string(r));
        for (int p = 0; p < s.n_papers; ++p) {
            std::snprintf(buf, sizeof(buf), "%.9f", s.at(r, p));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Bid parse_bid(const std::string& token) {
    if (token == "yes") return Bid::Yes;
    if (token == "maybe") return Bid::Maybe;
    if (token == "no_response") return Bid::NoResponse;
    throw ParseError("unknown bid token: '" + token + "'");
}

SimilarityMatrix bids_to_similarity(const std::vector<std::vector<Bid>>& bids,
                                    const std::vector<std::string>& reviewer_ids,
                                    const std::vector<std::string>& paper_ids) {
    const int m = static_cast<int>(bids.size());
    const int n = m > 0 ? static_cast<int>(bids[0].size()) : 0;
    SimilarityMatrix s = SimilarityMatrix::zeros(m, n);
    if (!reviewer_ids.empty()) s.reviewer_ids = reviewer_ids;
    if (!paper_ids.empty()) s.paper_ids = paper_ids;
    for (int r = 0; r < m; ++r) {
        if (static_cast<int>(bids[r].size()) != n) throw ConfigError("ragged bid matrix");
        for (int p = 0; p < n; ++p) {
            switch (bids[r][p]) {
                case Bid::Yes: s.at(r, p) = 1.0; break;
                case Bid::Maybe: s.at(r, p) = 0.5; break;
                case Bid::NoResponse: s.at(r, p) = 0.25; break;
            }
        }
    }
    return s;
}

SimilarityMatrix load_bids_csv(const std::string& path) {
    const Grid g = read_grid(path);
    std::vector<std::vector<Bid>> bids(g.cells.size());
    for (size_t r = 0; r < g.cells.size(); ++r) {
        bids[r].reserve(g.cells[r].size());
        for (size_t c = 0; c < g.cells[r].size(); ++c) {
            try {
                bids[r].push_back(parse_bid(g.cells[r][c]));
            } catch (const ParseError& e) {
                parse_fail(path, r + 2, c + 2, e.what());
            }
        }
    }
    return bids_to_similarity(bids, g.reviewer_ids, g.paper_ids);
}

SimilarityMatrix subject_overlap_similarity(const std::vector<std::vector<int>>& reviewer_areas,
                                            const std::vector<std::vector<int>>& paper_areas,
                                            int total_areas) {
    if (total_areas < 1) throw ConfigError("total_areas must be >= 1");
    const auto as_set = [&](const std::vector<int>& areas) {
        std::set<int> out;
        for (int a : areas) {
            if (a < 0 || a >= total_areas)
                throw ConfigError("area index " + std::to_string(a) + " out of range [0," +
                                  std::to_string(total_areas) + ")");
            out.insert(a);
        }
        return out;
    };
    std::vector<std::set<int>> rs, ps;
    for (const auto& a : reviewer_areas) rs.push_back(as_set(a));
    for (const auto& a : paper_areas) ps.push_back(as_set(a));

    SimilarityMatrix s = SimilarityMatrix::zeros(static_cast<int>(rs.size()),
                                                 static_cast<int>(ps.size()));
    for (size_t r = 0; r < rs.size(); ++r)
        for (size_t p = 0; p < ps.size(); ++p) {
            int common = 0;
            for (int a : rs[r]) common += ps[p].count(a);
            s.at(static_cast<int>(r), static_cast<int>(p)) =
                static_cast<double>(common) / total_areas;
        }
    return s;
}

AreaList load_subject_areas(const std::string& path) {
    AreaList out;
    const std::vector<std::string> lines = read_lines(path);
    for (size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_line(lines[i], ',');
        if (fields.size() != 2) parse_fail(path, i + 1, fields.size(), "expected 'id,areas'");
        out.ids.push_back(fields[0]);
        std::vector<int> areas;
        if (!fields[1].empty()) {
            for (const std::string& tok : split_line(fields[1], ';')) {
                errno = 0;
                char* end = nullptr;
                const long v = std::strtol(tok.c_str(), &end, 10);
                if (tok.empty() || end != tok.c_str() + tok.size() || errno != 0 || v < 0)
                    parse_fail(path, i + 1, 2, "bad area index: '" + tok + "'");
                areas.push_back(static_cast<int>(v));
            }
        }
        out.areas.push_back(std::move(areas));
    }
    return out;
}

SimilarityMatrix split_reviewer_copies(const SimilarityMatrix& s, int copies) {
    if (copies < 1) throw ConfigError("copies must be >= 1");
    if (copies == 1) return s;
    SimilarityMatrix out = SimilarityMatrix::zeros(s.n_reviewers * copies, s.n_papers);
    out.paper_ids = s.paper_ids;
    out.reviewer_ids.clear();
    for (int r = 0; r < s.n_reviewers; ++r) {
        const std::string base = r < static_cast<int>(s.reviewer_ids.size())
                                     ? s.reviewer_ids[r]
                                     : "r" + std::to_string(r);
        for (int c = 0; c < copies; ++c) {
            out.reviewer_ids.push_back(base + "_" + std::to_string(c));
            for (int p = 0; p < s.n_papers; ++p)
                if (p % copies == c) out.at(r * copies + c, p) = s.at(r, p);
        }
    }
    return out;
}

std::vector<double> load_scores(const std::string& path, const SimilarityMatrix& s) {
    const std::vector<std::string> lines = read_lines(path);
    std::map<std::string, double> by_id;
    size_t start = 0;
    if (!lines.empty() && split_line(lines[0], ',').at(0) == "paper_id") start = 1;
    for (size_t i = start; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string> fields = split_line(lines[i], ',');
        if (fields.size() != 2) parse_fail(path, i + 1, fields.size(), "expected 'paper_id,score'");
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(fields[1].c_str(), &end);
        if (fields[1].empty() || end != fields[1].c_str() + fields[1].size() || errno != 0)
            parse_fail(path, i + 1, 2, "not a number: '" + fields[1] + "'");
        if (!by_id.emplace(fields[0], v).second)
            throw ParseError(path + ": duplicate paper id '" + fields[0] + "'");
    }

    std::vector<double> scores;
    std::string missing;
    for (int p = 0; p < s.n_papers; ++p) {
        const std::string id =
            p < static_cast<int>(s.paper_ids.size()) ? s.paper_ids[p] : "p" + std::to_string(p);
        const auto it = by_id.find(id);
        if (it == by_id.end()) {
            missing += missing.empty() ? id : ", " + id;
            scores.push_back(0.0);
        } else {
            scores.push_back(it->second);
            by_id.erase(it);
        }
    }
    if (!missing.empty()) throw ParseError(path + ": no score for paper ids: " + missing);
    if (!by_id.empty())
        throw ParseError(path + ": score for unknown paper id '" + by_id.begin()->first + "'");
    return scores;
}

}  // namespace revsplit
