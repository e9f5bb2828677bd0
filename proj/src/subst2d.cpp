#include "tilecoh/subst2d.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tilecoh {

namespace {

// Side and corner slot layout per face: 4*letter + index.
enum Side : std::size_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };
enum Corner : std::size_t { kNW = 0, kNE = 1, kSE = 2, kSW = 3 };

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent[a] = b;
    }
    // Representative-root -> compact id, ordered by smallest member slot.
    std::map<std::size_t, std::size_t> compact() {
        std::map<std::size_t, std::size_t> id;
        for (std::size_t x = 0; x < parent.size(); ++x) {
            std::size_t r = find(x);
            if (!id.count(r)) id[r] = id.size();
        }
        return id;
    }
};

Block subgrid(const Block& b, std::size_t top, std::size_t left, std::size_t k) {
    Block out(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out[i][j] = b[top + i][left + j];
    return out;
}

}  // namespace

Block BlockSubstitution2D::apply(const Block& b) const {
    const std::size_t n = block_size;
    const std::size_t rows = b.size(), cols = rows ? b[0].size() : 0;
    Block out(rows * n, std::vector<std::size_t>(cols * n));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const Block& g = rules.at(b[i][j]);
            for (std::size_t di = 0; di < n; ++di)
                for (std::size_t dj = 0; dj < n; ++dj) out[i * n + di][j * n + dj] = g[di][dj];
        }
    return out;
}

void BlockSubstitution2D::validate() const {
    if (alphabet.empty()) throw std::invalid_argument("block substitution: empty alphabet");
    if (block_size < 2) throw std::invalid_argument("block substitution: block size must be >= 2");
    if (rules.size() != alphabet.size())
        throw std::invalid_argument("block substitution: one rule grid per letter required");
    for (const Block& g : rules) {
        if (g.size() != block_size) throw std::invalid_argument("block substitution: rule grid is not N x N");
        for (const auto& row : g) {
            if (row.size() != block_size)
                throw std::invalid_argument("block substitution: rule grid is not N x N");
            for (std::size_t letter : row)
                if (letter >= alphabet.size())
                    throw std::invalid_argument("block substitution: rule letter out of range");
        }
    }
}

IntMatrix subst_matrix_2d(const BlockSubstitution2D& s) {
    const std::size_t n = s.size();
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& row : s.rules[j])
            for (std::size_t letter : row) a(letter, j) += 1;
    return a;
}

bool primitivity_2d(const BlockSubstitution2D& s) {
    const std::size_t n = s.size();
    IntMatrix a = subst_matrix_2d(s);
    IntMatrix p = IntMatrix::identity(n);
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t m = 1; m <= bound; ++m) {
        p = p * a;
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (p(i, j) <= 0) {
                    positive = false;
                    break;
                }
        if (positive) return true;
    }
    return false;
}

std::set<Block> allowed_blocks(const BlockSubstitution2D& s, std::size_t k) {
    if (k < 1) throw std::invalid_argument("allowed_blocks: size must be >= 1");
    s.validate();

    std::set<Block> blocks;
    std::deque<Block> queue;
    auto harvest = [&](const Block& b) {
        if (b.size() < k) return;
        for (std::size_t i = 0; i + k <= b.size(); ++i)
            for (std::size_t j = 0; j + k <= b[0].size(); ++j) {
                Block sub = subgrid(b, i, j, k);
                if (blocks.insert(sub).second) queue.push_back(std::move(sub));
            }
    };

    for (std::size_t a = 0; a < s.size(); ++a) {
        Block b = {{a}};
        while (b.size() < k) b = s.apply(b);
        harvest(b);
    }
    while (!queue.empty()) {
        Block b = std::move(queue.front());
        queue.pop_front();
        harvest(s.apply(b));
    }
    return blocks;
}

Collared2D collar2d(const BlockSubstitution2D& s) {
    s.validate();
    const std::size_t n = s.block_size;
    std::set<Block> windows = allowed_blocks(s, 3);

    Collared2D c;
    c.collared.block_size = n;
    std::map<Block, std::size_t> index;
    for (const Block& w : windows) {
        index[w] = c.letter_blocks.size();
        c.letter_blocks.push_back(w);
        c.projection.push_back(w[1][1]);
        std::string name = s.alphabet[w[1][1]] + "[";
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (i || j) name += (j == 0 ? "/" : " ");
                name += s.alphabet[w[i][j]];
            }
        name += "]";
        c.collared.alphabet.push_back(name);
    }

    for (const Block& w : c.letter_blocks) {
        Block img = s.apply(w);  // 3N x 3N; center occupies rows/cols N..2N-1
        Block rule(n, std::vector<std::size_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Block ctx = subgrid(img, n + i - 1, n + j - 1, 3);
                auto it = index.find(ctx);
                if (it == index.end())
                    throw InternalError("collar2d: image window missing from closure");
                rule[i][j] = it->second;
            }
        c.collared.rules.push_back(std::move(rule));
    }
    c.collared.validate();
    return c;
}

ApComplex2D build_ap2d(const BlockSubstitution2D& s, bool collared) {
    Collared2D col;
    const BlockSubstitution2D* scp = &s;
    if (collared) {
        col = collar2d(s);
        scp = &col.collared;
    } else {
        s.validate();
    }
    const BlockSubstitution2D& sc = *scp;
    const std::size_t l = sc.size();
    const std::size_t n = sc.block_size;

    ApComplex2D ap;
    ap.diagnostic_only = !collared;
    ap.num_faces = l;
    ap.face_names = sc.alphabet;

    auto eslot = [](std::size_t a, std::size_t side) { return 4 * a + side; };
    auto cslot = [](std::size_t a, std::size_t corner) { return 4 * a + corner; };

    UnionFind edges(4 * l), corners(4 * l);
    auto glue_h = [&](std::size_t a, std::size_t b) {  // b sits east of a
        edges.unite(eslot(a, kEast), eslot(b, kWest));
        corners.unite(cslot(a, kNE), cslot(b, kNW));
        corners.unite(cslot(a, kSE), cslot(b, kSW));
    };
    auto glue_v = [&](std::size_t a, std::size_t b) {  // b sits south of a
        edges.unite(eslot(a, kSouth), eslot(b, kNorth));
        corners.unite(cslot(a, kSW), cslot(b, kNW));
        corners.unite(cslot(a, kSE), cslot(b, kNE));
    };
    for (const Block& b : allowed_blocks(sc, 2)) {
        const std::size_t p = b[0][0], q = b[0][1], r = b[1][0], t = b[1][1];
        glue_h(p, q);
        glue_h(r, t);
        glue_v(p, r);
        glue_v(q, t);
        // The interior point of the 2 x 2 block.
        corners.unite(cslot(p, kSE), cslot(q, kSW));
        corners.unite(cslot(p, kSE), cslot(r, kNE));
        corners.unite(cslot(p, kSE), cslot(t, kNW));
    }

    std::map<std::size_t, std::size_t> eid = edges.compact(), vid = corners.compact();
    ap.num_edges = eid.size();
    ap.num_vertices = vid.size();
    auto eclass = [&](std::size_t a, std::size_t side) { return eid.at(edges.find(eslot(a, side))); };
    auto vclass = [&](std::size_t a, std::size_t corner) { return vid.at(corners.find(cslot(a, corner))); };

    // Boundary matrices (chain convention), transposed below for cochains.
    IntMatrix d2(ap.num_edges, l);  // face boundary: S + E - N - W
    for (std::size_t a = 0; a < l; ++a) {
        d2(eclass(a, kSouth), a) += 1;
        d2(eclass(a, kEast), a) += 1;
        d2(eclass(a, kNorth), a) -= 1;
        d2(eclass(a, kWest), a) -= 1;
    }
    // Edge boundary: head - tail. Horizontal edges point east, vertical north.
    IntMatrix d1(ap.num_vertices, ap.num_edges);
    std::vector<bool> edge_done(ap.num_edges, false);
    auto edge_ends = [&](std::size_t a, std::size_t side) -> std::pair<std::size_t, std::size_t> {
        switch (side) {  // {tail, head}
            case kNorth: return {vclass(a, kNW), vclass(a, kNE)};
            case kSouth: return {vclass(a, kSW), vclass(a, kSE)};
            case kEast: return {vclass(a, kSE), vclass(a, kNE)};
            default: return {vclass(a, kSW), vclass(a, kNW)};
        }
    };
    std::vector<std::pair<std::size_t, std::size_t>> ends(ap.num_edges);
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t side = 0; side < 4; ++side) {
            std::size_t e = eclass(a, side);
            auto te = edge_ends(a, side);
            if (edge_done[e]) {
                if (ends[e] != te)
                    throw InternalError("build_ap2d: edge endpoints not well-defined on classes");
                continue;
            }
            edge_done[e] = true;
            ends[e] = te;
            d1(te.second, e) += 1;
            d1(te.first, e) -= 1;
        }

    // Chain maps of the substitution (M[c'][c] = multiplicity of c' in the
    // image of c), checked for well-definedness on identification classes.
    IntMatrix f2(l, l);
    for (std::size_t a = 0; a < l; ++a)
        for (const auto& row : sc.rules[a])
            for (std::size_t letter : row) f2(letter, a) += 1;

    auto side_image = [&](std::size_t a, std::size_t side) {
        std::vector<Int> chain(ap.num_edges);
        const Block& g = sc.rules[a];
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t letter;
            switch (side) {
                case kNorth: letter = g[0][i]; break;
                case kSouth: letter = g[n - 1][i]; break;
                case kEast: letter = g[i][n - 1]; break;
                default: letter = g[i][0]; break;
            }
            chain[eclass(letter, side)] += 1;
        }
        return chain;
    };
    IntMatrix f1(ap.num_edges, ap.num_edges);
    std::vector<bool> f1_done(ap.num_edges, false);
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t side = 0; side < 4; ++side) {
            std::size_t e = eclass(a, side);
            std::vector<Int> chain = side_image(a, side);
            if (f1_done[e]) {
                if (f1.column_vec(e) != chain)
                    throw InternalError("build_ap2d: edge image not well-defined on classes");
                continue;
            }
            f1_done[e] = true;
            f1.set_column(e, chain);
        }

    auto corner_image = [&](std::size_t a, std::size_t corner) -> std::size_t {
        const Block& g = sc.rules[a];
        switch (corner) {
            case kNW: return vclass(g[0][0], kNW);
            case kNE: return vclass(g[0][n - 1], kNE);
            case kSE: return vclass(g[n - 1][n - 1], kSE);
            default: return vclass(g[n - 1][0], kSW);
        }
    };
    IntMatrix f0(ap.num_vertices, ap.num_vertices);
    std::vector<bool> f0_done(ap.num_vertices, false);
    std::vector<std::size_t> f0_img(ap.num_vertices);
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t corner = 0; corner < 4; ++corner) {
            std::size_t v = vclass(a, corner);
            std::size_t w = corner_image(a, corner);
            if (f0_done[v]) {
                if (f0_img[v] != w)
                    throw InternalError("build_ap2d: vertex image not well-defined on classes");
                continue;
            }
            f0_done[v] = true;
            f0_img[v] = w;
            f0(w, v) += 1;
        }

    ap.system.dims = {ap.num_vertices, ap.num_edges, l};
    ap.system.delta = {d1.transpose(), d2.transpose()};
    ap.system.endo = {f0.transpose(), f1.transpose(), f2.transpose()};
    return ap;
}

Cech2DResult cech_2d(const BlockSubstitution2D& s) {
    Cech2DResult r;
    r.primitive = primitivity_2d(s);
    if (!r.primitive)
        r.warnings.push_back("block substitution is not primitive; closure may overcount");
    ApComplex2D ap = build_ap2d(s, true);
    r.ap = complex_cohomology(ap.system);
    return r;
}

}  // namespace tilecoh
