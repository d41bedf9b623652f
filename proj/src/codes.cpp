#include "rcq/codes.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rcq {

std::vector<int> QcBaseMatrix::active_rows(int c) const {
    std::vector<int> out;
    for (int r = 0; r < rows; ++r)
        if (!empty_at(r, c)) out.push_back(r);
    return out;
}

std::vector<int> QcBaseMatrix::active_cols(int r) const {
    std::vector<int> out;
    for (int c = 0; c < cols; ++c)
        if (!empty_at(r, c)) out.push_back(c);
    return out;
}

int QcBaseMatrix::col_degree(int c) const {
    return static_cast<int>(active_rows(c).size());
}

int QcBaseMatrix::row_degree(int r) const {
    return static_cast<int>(active_cols(r).size());
}

void QcBaseMatrix::validate() const {
    if (rows < 1 || cols < 1 || circulant_size < 1)
        throw std::invalid_argument("base matrix: dimensions must be positive");
    if (entries.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("base matrix: entry count mismatch");
    for (int v : entries)
        if (v >= circulant_size)
            throw std::invalid_argument("base matrix: shift value >= circulant size");
}

std::size_t SparseParityCheck::edge_count() const {
    std::size_t e = 0;
    for (const auto& r : row_adjacency) e += r.size();
    return e;
}

void SparseParityCheck::validate() const {
    if (static_cast<int>(row_adjacency.size()) != m ||
        static_cast<int>(col_adjacency.size()) != n)
        throw std::invalid_argument("parity check: adjacency size mismatch");
    std::size_t row_edges = 0, col_edges = 0;
    for (int r = 0; r < m; ++r) {
        const auto& adj = row_adjacency[r];
        if (!std::is_sorted(adj.begin(), adj.end()))
            throw std::invalid_argument("parity check: row adjacency not sorted");
        if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
            throw std::invalid_argument("parity check: duplicate entry in row");
        for (int c : adj) {
            if (c < 0 || c >= n)
                throw std::invalid_argument("parity check: column index out of range");
            if (!std::binary_search(col_adjacency[c].begin(), col_adjacency[c].end(), r))
                throw std::invalid_argument("parity check: row/col adjacency inconsistent");
        }
        row_edges += adj.size();
    }
    for (const auto& adj : col_adjacency) col_edges += adj.size();
    if (row_edges != col_edges)
        throw std::invalid_argument("parity check: row/col edge counts differ");
}

bool SparseParityCheck::one_neighbor_per_layer() const {
    if (!layers) return false;
    for (const auto& adj : col_adjacency) {
        std::set<int> seen;
        for (int r : adj)
            if (!seen.insert(layers->layer_of_row(r)).second) return false;
    }
    return true;
}

bool SparseParityCheck::syndrome_is_zero(const std::vector<uint8_t>& bits) const {
    for (const auto& adj : row_adjacency) {
        int parity = 0;
        for (int c : adj) parity ^= bits[c];
        if (parity) return false;
    }
    return true;
}

SparseParityCheck SparseParityCheck::from_adjacency(int n, int m,
                                                    std::vector<std::vector<int>> rows) {
    SparseParityCheck h;
    h.n = n;
    h.m = m;
    h.row_adjacency = std::move(rows);
    h.col_adjacency.assign(n, {});
    for (int r = 0; r < m; ++r) {
        std::sort(h.row_adjacency[r].begin(), h.row_adjacency[r].end());
        for (int c : h.row_adjacency[r]) h.col_adjacency[c].push_back(r);
    }
    for (auto& adj : h.col_adjacency) std::sort(adj.begin(), adj.end());
    h.validate();
    return h;
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Reads the next whitespace-separated integer, tracking line numbers.
    int next_int(const char* what) {
        while (true) {
            if (!(line_stream_ >> std::ws) || line_stream_.eof()) {
                if (!std::getline(in_, line_)) fail(std::string("unexpected end of input while reading ") + what);
                ++line_no_;
                line_stream_ = std::istringstream(line_);
                continue;
            }
            int v;
            if (!(line_stream_ >> v)) fail(std::string("malformed integer while reading ") + what);
            return v;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("line " + std::to_string(line_no_) + ": " + msg);
    }

    int line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::string line_;
    std::istringstream line_stream_;
    int line_no_ = 0;
};

}  // namespace

SparseParityCheck parse_alist(std::istream& in) {
    LineReader rd(in);
    const int n = rd.next_int("column count");
    const int m = rd.next_int("row count");
    if (n < 1 || m < 1) rd.fail("malformed header: dimensions must be positive");
    const int max_col_deg = rd.next_int("max column degree");
    const int max_row_deg = rd.next_int("max row degree");

    std::vector<int> col_deg(n), row_deg(m);
    for (int c = 0; c < n; ++c) {
        col_deg[c] = rd.next_int("column degree");
        if (col_deg[c] < 0 || col_deg[c] > max_col_deg)
            rd.fail("column degree outside declared maximum");
    }
    for (int r = 0; r < m; ++r) {
        row_deg[r] = rd.next_int("row degree");
        if (row_deg[r] < 0 || row_deg[r] > max_row_deg)
            rd.fail("row degree outside declared maximum");
    }

    // alist lists max_deg entries per node, zero-padded; indices are 1-based.
    std::vector<std::vector<int>> col_adj(n), row_adj(m);
    for (int c = 0; c < n; ++c) {
        for (int k = 0; k < max_col_deg; ++k) {
            const int v = rd.next_int("column entry");
            if (v == 0) continue;
            if (v < 1 || v > m) rd.fail("row index out of range in column list");
            col_adj[c].push_back(v - 1);
        }
        if (static_cast<int>(col_adj[c].size()) != col_deg[c])
            rd.fail("degree mismatch: column " + std::to_string(c) + " lists " +
                    std::to_string(col_adj[c].size()) + " rows, header says " +
                    std::to_string(col_deg[c]));
    }
    for (int r = 0; r < m; ++r) {
        for (int k = 0; k < max_row_deg; ++k) {
            const int v = rd.next_int("row entry");
            if (v == 0) continue;
            if (v < 1 || v > n) rd.fail("column index out of range in row list");
            row_adj[r].push_back(v - 1);
        }
        if (static_cast<int>(row_adj[r].size()) != row_deg[r])
            rd.fail("degree mismatch: row " + std::to_string(r) + " lists " +
                    std::to_string(row_adj[r].size()) + " columns, header says " +
                    std::to_string(row_deg[r]));
    }

    SparseParityCheck h = SparseParityCheck::from_adjacency(n, m, std::move(row_adj));
    for (int c = 0; c < n; ++c) {
        std::sort(col_adj[c].begin(), col_adj[c].end());
        if (col_adj[c] != h.col_adjacency[c])
            throw std::runtime_error("alist: row and column lists are inconsistent at column " +
                                     std::to_string(c));
    }
    return h;
}

SparseParityCheck parse_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open alist file: " + path);
    return parse_alist(in);
}

std::string serialize_alist(const SparseParityCheck& h) {
    std::ostringstream out;
    int max_col = 0, max_row = 0;
    for (const auto& a : h.col_adjacency) max_col = std::max<int>(max_col, a.size());
    for (const auto& a : h.row_adjacency) max_row = std::max<int>(max_row, a.size());
    out << h.n << ' ' << h.m << '\n' << max_col << ' ' << max_row << '\n';
    for (int c = 0; c < h.n; ++c) out << h.col_adjacency[c].size() << (c + 1 < h.n ? ' ' : '\n');
    for (int r = 0; r < h.m; ++r) out << h.row_adjacency[r].size() << (r + 1 < h.m ? ' ' : '\n');
    for (const auto& adj : h.col_adjacency) {
        for (int k = 0; k < max_col; ++k)
            out << (k < static_cast<int>(adj.size()) ? adj[k] + 1 : 0) << (k + 1 < max_col ? ' ' : '\n');
    }
    for (const auto& adj : h.row_adjacency) {
        for (int k = 0; k < max_row; ++k)
            out << (k < static_cast<int>(adj.size()) ? adj[k] + 1 : 0) << (k + 1 < max_row ? ' ' : '\n');
    }
    return out.str();
}

QcBaseMatrix parse_base_matrix(std::istream& in) {
    LineReader rd(in);
    QcBaseMatrix base;
    base.rows = rd.next_int("M");
    base.cols = rd.next_int("U");
    base.circulant_size = rd.next_int("S");
    if (base.rows < 1 || base.cols < 1 || base.circulant_size < 1)
        rd.fail("header dimensions must be positive");
    base.entries.resize(static_cast<std::size_t>(base.rows) * base.cols);
    for (int r = 0; r < base.rows; ++r)
        for (int c = 0; c < base.cols; ++c) {
            int v = rd.next_int("shift entry");
            if (v < -1) rd.fail("shift entries must be -1 (empty) or nonnegative");
            if (v >= base.circulant_size)
                rd.fail("shift " + std::to_string(v) + " >= circulant size " +
                        std::to_string(base.circulant_size));
            base.entries[static_cast<std::size_t>(r) * base.cols + c] = v;
        }
    base.validate();
    return base;
}

QcBaseMatrix parse_base_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open base matrix file: " + path);
    return parse_base_matrix(in);
}

std::string serialize_base_matrix(const QcBaseMatrix& base) {
    std::ostringstream out;
    out << base.rows << ' ' << base.cols << ' ' << base.circulant_size << '\n';
    for (int r = 0; r < base.rows; ++r)
        for (int c = 0; c < base.cols; ++c)
            out << base.at(r, c) << (c + 1 < base.cols ? ' ' : '\n');
    return out.str();
}

SparseParityCheck expand(const QcBaseMatrix& base) {
    base.validate();
    const int S = base.circulant_size;
    const int m = base.rows * S;
    const int n = base.cols * S;
    std::vector<std::vector<int>> rows(m);
    for (int r = 0; r < base.rows; ++r)
        for (int c = 0; c < base.cols; ++c) {
            const int shift = base.at(r, c);
            if (shift < 0) continue;
            for (int k = 0; k < S; ++k)
                rows[r * S + k].push_back(c * S + (k + shift) % S);
        }
    SparseParityCheck h = SparseParityCheck::from_adjacency(n, m, std::move(rows));
    h.layers = LayerPartition{base.rows, S};
    return h;
}

namespace {

int count_circulant_4cycles(const QcBaseMatrix& base) {
    int cycles = 0;
    for (int c1 = 0; c1 < base.cols; ++c1)
        for (int c2 = c1 + 1; c2 < base.cols; ++c2) {
            std::vector<int> shared;
            for (int r = 0; r < base.rows; ++r)
                if (!base.empty_at(r, c1) && !base.empty_at(r, c2)) shared.push_back(r);
            for (std::size_t i = 0; i < shared.size(); ++i)
                for (std::size_t j = i + 1; j < shared.size(); ++j) {
                    const int r1 = shared[i], r2 = shared[j];
                    const int d = ((base.at(r1, c1) - base.at(r2, c1) - base.at(r1, c2) +
                                    base.at(r2, c2)) % base.circulant_size +
                                   base.circulant_size) % base.circulant_size;
                    if (d == 0) ++cycles;
                }
        }
    return cycles;
}

}  // namespace

QuasiRegularReport make_quasi_regular_qc(int layers, int cols, int circulant_size,
                                         int vn_degree, uint64_t seed) {
    if (vn_degree > layers)
        throw std::invalid_argument("make_quasi_regular_qc: vn_degree exceeds layer count");
    if (layers < 1 || cols < 1 || circulant_size < 1 || vn_degree < 1)
        throw std::invalid_argument("make_quasi_regular_qc: parameters must be positive");

    std::mt19937_64 rng(seed);
    QcBaseMatrix base;
    base.rows = layers;
    base.cols = cols;
    base.circulant_size = circulant_size;
    base.entries.assign(static_cast<std::size_t>(layers) * cols, -1);

    // Pick vn_degree rows per column, keeping row degrees balanced: always
    // choose among the currently least-loaded rows, ties randomized.
    std::vector<int> row_load(layers, 0);
    for (int c = 0; c < cols; ++c) {
        std::vector<int> order(layers);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::stable_sort(order.begin(), order.end(),
                         [&row_load](int a, int b) { return row_load[a] < row_load[b]; });
        for (int k = 0; k < vn_degree; ++k) {
            const int r = order[k];
            ++row_load[r];
            base.entries[static_cast<std::size_t>(r) * cols + c] =
                static_cast<int>(rng() % circulant_size);
        }
    }

    // Best-effort removal of 4-cycles among circulants by re-drawing shifts.
    for (int pass = 0; pass < 50; ++pass) {
        if (count_circulant_4cycles(base) == 0) break;
        bool changed = false;
        for (int c1 = 0; c1 < cols; ++c1)
            for (int c2 = c1 + 1; c2 < cols; ++c2) {
                std::vector<int> shared;
                for (int r = 0; r < layers; ++r)
                    if (!base.empty_at(r, c1) && !base.empty_at(r, c2)) shared.push_back(r);
                for (std::size_t i = 0; i < shared.size(); ++i)
                    for (std::size_t j = i + 1; j < shared.size(); ++j) {
                        const int r1 = shared[i], r2 = shared[j];
                        const int d = ((base.at(r1, c1) - base.at(r2, c1) - base.at(r1, c2) +
                                        base.at(r2, c2)) % circulant_size +
                                       circulant_size) % circulant_size;
                        if (d == 0) {
                            base.entries[static_cast<std::size_t>(r1) * cols + c1] =
                                static_cast<int>(rng() % circulant_size);
                            changed = true;
                        }
                    }
            }
        if (!changed) break;
    }

    QuasiRegularReport report;
    report.base = base;
    report.residual_circulant_4cycles = count_circulant_4cycles(base);
    report.row_degree_profile.resize(layers);
    for (int r = 0; r < layers; ++r) report.row_degree_profile[r] = base.row_degree(r);
    return report;
}

}  // namespace rcq
