#include "betti/image_persistence.hpp"

#include <limits>
#include <string>

#include "betti/errors.hpp"
#include "betti/union_find.hpp"

namespace betti {

void require_comparable(const CubicalGrid& domain, const CubicalGrid& codomain) {
  if (!domain.same_complex(codomain) || domain.direction() != codomain.direction()) {
    throw Error(ErrorCode::IncompatibleGrids,
                "grids differ in shape, construction, direction or frame");
  }
  const auto dv = domain.internal_values();
  const auto cv = codomain.internal_values();
  for (std::size_t k = 0; k < dv.size(); ++k) {
    if (dv[k] < cv[k]) {
      const CellId c = domain.cell_of(static_cast<CellKey>(k));
      throw Error(ErrorCode::NotComparable,
                  "domain enters before codomain at cell (dim " + std::to_string(c.dim) + ", " +
                      std::to_string(c.row) + ", " + std::to_string(c.col) + ")");
    }
  }
}

ImagePair make_image_pair(const CubicalGrid& domain, const CubicalGrid& codomain, int dim,
                          CellKey birth, CellKey death) {
  ImagePair p;
  p.dim = dim;
  p.birth_cell = domain.cell_of(birth);
  p.birth_index = domain.index_of(birth);
  p.birth_value = domain.value(birth);
  p.death_cell = codomain.cell_of(death);
  p.death_index = codomain.index_of(death);
  p.death_value = codomain.value(death);
  p.reverse = !(domain.internal_value(birth) < codomain.internal_value(death));
  return p;
}

ImageBarcode compute_image_barcode(const CubicalGrid& domain, const CubicalGrid& codomain,
                                   const Barcode& domain_barcode,
                                   const Barcode& codomain_barcode) {
  require_comparable(domain, codomain);
  ImageBarcode out;

  // Dimension 0: codomain columns in codomain order, classes born by domain
  // index.
  BirthUnionFind primal(domain.num_vertices(), ElderRule::MinBirth);
  for (std::uint32_t v = 0; v < domain.num_vertices(); ++v) primal.set_birth(v, domain.index_of(v));
  for (const CellKey e : codomain_barcode.columns_to_reduce) {
    const auto [u, v] = codomain.edge_vertices(e);
    const std::uint32_t x = primal.find(u);
    const std::uint32_t y = primal.find(v);
    if (x == y) continue;
    const CellKey vertex = domain.key_at(primal.younger_birth(x, y));
    out.pairs[0].push_back(make_image_pair(domain, codomain, 0, vertex, e));
    primal.unite(x, y);
  }

  // Dimension 1: domain critical edges in decreasing domain order, dual
  // classes born by codomain index.
  const std::uint32_t n_squares = codomain.num_squares();
  BirthUnionFind dual(n_squares + 1, ElderRule::MaxBirth);
  for (std::uint32_t s = 0; s < n_squares; ++s) {
    dual.set_birth(s, codomain.index_of(codomain.square_key(s)));
  }
  dual.set_birth(n_squares, std::numeric_limits<std::uint32_t>::max());
  auto dual_vertex = [&](std::uint32_t s) { return s == DualVertexId::kOutside ? n_squares : s; };
  for (const CellKey e : domain_barcode.critical_edges) {
    const auto [a, b] = domain.edge_squares(e);
    const std::uint32_t x = dual.find(dual_vertex(a));
    const std::uint32_t y = dual.find(dual_vertex(b));
    if (x == y) continue;
    const CellKey square = codomain.key_at(dual.younger_birth(x, y));
    out.pairs[1].push_back(make_image_pair(domain, codomain, 1, e, square));
    dual.unite(x, y);
  }
  return out;
}

}  // namespace betti
