#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rcq {

// M x U grid of circulant descriptors; entry -1 means the all-zero block,
// i >= 0 the identity cyclically shifted by i.  Circulant size S.
struct QcBaseMatrix {
    int rows = 0;            // M
    int cols = 0;            // U
    int circulant_size = 0;  // S
    std::vector<int> entries;  // row-major, -1 = empty

    int at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }
    bool empty_at(int r, int c) const { return at(r, c) < 0; }

    std::vector<int> active_rows(int c) const;   // R(c)
    std::vector<int> active_cols(int r) const;   // C(r)
    int col_degree(int c) const;
    int row_degree(int r) const;

    void validate() const;
};

struct LayerPartition {
    int layers = 0;          // M
    int rows_per_layer = 0;  // S
    int layer_of_row(int row) const { return row / rows_per_layer; }
};

// Generic sparse binary parity-check matrix held as dual adjacency lists.
struct SparseParityCheck {
    int n = 0;  // columns / VNs
    int m = 0;  // rows / CNs
    std::vector<std::vector<int>> row_adjacency;  // per row, sorted column indices
    std::vector<std::vector<int>> col_adjacency;  // per column, sorted row indices
    std::optional<LayerPartition> layers;  // present when derived from a QC base

    std::size_t edge_count() const;
    void validate() const;
    // True iff every column has at most one neighbor row within each layer.
    bool one_neighbor_per_layer() const;
    bool syndrome_is_zero(const std::vector<uint8_t>& bits) const;

    static SparseParityCheck from_adjacency(int n, int m,
                                            std::vector<std::vector<int>> rows);
};

// Standard alist text format.
SparseParityCheck parse_alist(std::istream& in);
SparseParityCheck parse_alist_file(const std::string& path);
std::string serialize_alist(const SparseParityCheck& h);

// Base-matrix text format: first line "M U S", then M rows of U integers,
// -1 for an empty block.
QcBaseMatrix parse_base_matrix(std::istream& in);
QcBaseMatrix parse_base_matrix_file(const std::string& path);
std::string serialize_base_matrix(const QcBaseMatrix& base);

SparseParityCheck expand(const QcBaseMatrix& base);

struct QuasiRegularReport {
    QcBaseMatrix base;
    int residual_circulant_4cycles = 0;  // best-effort girth conditioning
    std::vector<int> row_degree_profile;
};

// Deterministic pseudo-random QC base matrix with exactly vn_degree blocks
// per column and near-uniform row degrees.
QuasiRegularReport make_quasi_regular_qc(int layers, int cols, int circulant_size,
                                         int vn_degree, uint64_t seed);

}  // namespace rcq
