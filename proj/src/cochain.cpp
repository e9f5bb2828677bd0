#include "tilecoh/cochain.hpp"

#include <stdexcept>

namespace tilecoh {

void validate_system(const CochainSystem& s) {
    const std::size_t n = s.dims.size();
    if (n == 0) throw std::invalid_argument("cochain system: no degrees");
    if (s.delta.size() != n - 1) throw std::invalid_argument("cochain system: need one coboundary per consecutive degree pair");
    if (s.endo.size() != n) throw std::invalid_argument("cochain system: need one endomorphism per degree");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (s.delta[k].rows() != s.dims[k + 1] || s.delta[k].cols() != s.dims[k])
            throw std::invalid_argument("cochain system: coboundary shape mismatch");
    for (std::size_t k = 0; k < n; ++k)
        if (s.endo[k].rows() != s.dims[k] || s.endo[k].cols() != s.dims[k])
            throw std::invalid_argument("cochain system: endomorphism shape mismatch");
    for (std::size_t k = 0; k + 2 < n; ++k)
        if (!(s.delta[k + 1] * s.delta[k]).is_zero())
            throw std::invalid_argument("cochain system: delta . delta != 0");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (!(s.endo[k + 1] * s.delta[k] - s.delta[k] * s.endo[k]).is_zero())
            throw std::invalid_argument("cochain system: endomorphism is not a chain map");
}

CohomologyResult complex_cohomology(const CochainSystem& s) {
    validate_system(s);
    const std::size_t n = s.dims.size();
    CohomologyResult out;
    for (std::size_t k = 0; k < n; ++k) {
        DegreeResult d;

        // Saturated basis of the cocycle lattice ker(delta_k).
        IntMatrix kern = k + 1 < n ? kernel_basis(s.delta[k]) : IntMatrix::identity(s.dims[k]);

        // Coboundary relations expressed in kernel coordinates (integral
        // because the kernel basis is saturated and delta.delta = 0).
        IntMatrix rel = k > 0 ? solve_in_lattice(kern, s.delta[k - 1]) : IntMatrix(kern.cols(), 0);

        // The cellular endomorphism preserves cocycles.
        IntMatrix g = solve_in_lattice(kern, s.endo[k] * kern);

        d.approximant = cokernel(rel);
        d.presentation = make_dlim_presentation(rel, g);
        d.cech = dlim_describe(d.presentation);
        d.kernel = std::move(kern);
        SmithDecomposition sd = smith(rel);
        d.rel_rank = sd.rank();
        d.rel_u = std::move(sd.U);
        out.degrees.push_back(std::move(d));
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t sign = (k % 2 == 0) ? 1 : -1;
        out.euler_cells += sign * static_cast<std::int64_t>(s.dims[k]);
        out.euler_cohomology += sign * static_cast<std::int64_t>(out.degrees[k].approximant.free_rank);
    }
    if (out.euler_cells != out.euler_cohomology)
        throw InternalError("complex_cohomology: Euler characteristic mismatch");
    return out;
}

std::vector<Rat> free_class(const DegreeResult& d, const std::vector<Rat>& cocycle) {
    auto y = solve_rational(d.kernel, cocycle);
    if (!y) throw std::invalid_argument("free_class: vector is not a cocycle");
    const std::size_t z = d.kernel.cols();
    std::vector<Rat> out;
    for (std::size_t i = d.rel_rank; i < z; ++i) {
        Rat acc(0);
        for (std::size_t j = 0; j < z; ++j) acc += Rat(d.rel_u(i, j)) * (*y)[j];
        out.push_back(acc);
    }
    return out;
}

CochainSystem graph_system(std::size_t num_vertices, const std::vector<GraphEdge>& edges,
                           const std::vector<std::size_t>& vertex_map,
                           const std::vector<std::vector<std::int64_t>>& edge_paths) {
    const std::size_t v = num_vertices, e = edges.size();
    if (vertex_map.size() != v) throw std::invalid_argument("graph_system: vertex map size");
    if (edge_paths.size() != e) throw std::invalid_argument("graph_system: edge path count");

    CochainSystem s;
    s.dims = {v, e};

    IntMatrix delta0(e, v);
    for (std::size_t i = 0; i < e; ++i) {
        if (edges[i].tail >= v || edges[i].head >= v)
            throw std::invalid_argument("graph_system: edge endpoint out of range");
        delta0(i, edges[i].head) += 1;
        delta0(i, edges[i].tail) -= 1;
    }

    // Cochain pushforwards: F^k = (cellular map on k-cells)^T with signs.
    IntMatrix f0(v, v);
    for (std::size_t i = 0; i < v; ++i) {
        if (vertex_map[i] >= v) throw std::invalid_argument("graph_system: vertex image out of range");
        f0(i, vertex_map[i]) += 1;
    }
    IntMatrix f1(e, e);
    for (std::size_t i = 0; i < e; ++i) {
        std::size_t at = vertex_map[edges[i].tail];
        for (std::int64_t step : edge_paths[i]) {
            if (step == 0) throw std::invalid_argument("graph_system: zero edge path entry");
            std::size_t idx = static_cast<std::size_t>(step > 0 ? step : -step) - 1;
            if (idx >= e) throw std::invalid_argument("graph_system: edge path index out of range");
            if (step > 0) {
                if (edges[idx].tail != at)
                    throw std::invalid_argument("graph_system: edge path not continuous");
                f1(i, idx) += 1;
                at = edges[idx].head;
            } else {
                if (edges[idx].head != at)
                    throw std::invalid_argument("graph_system: edge path not continuous");
                f1(i, idx) -= 1;
                at = edges[idx].tail;
            }
        }
        if (at != vertex_map[edges[i].head])
            throw std::invalid_argument("graph_system: edge path endpoint mismatch");
    }

    s.delta = {delta0};
    s.endo = {f0, f1};
    return s;
}

}  // namespace tilecoh
