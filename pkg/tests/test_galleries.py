from fractions import Fraction as F

import pytest

from alcove_adlv.adlv import q1_is_unique
from alcove_adlv.errors import NoSuchIsometry, OmegaSelfIntersects, VertexInBaseAlcove
from alcove_adlv.folding import superpiece_map
from alcove_adlv.galleries import Gallery, GalleryBuilder


def test_alcove_graph_lengths(a2):
    builder = GalleryBuilder(a2)
    graph = builder.alcove_graph(2)
    lengths = [data["length"] for _, data in graph.nodes(data=True)]
    assert lengths.count(0) == 1
    assert lengths.count(1) == 3
    assert max(lengths) == 2
    for a, b, data in graph.edges(data=True):
        assert a2.separating_hyperplane(a, b) == data["hyperplane"]


def test_minimal_gallery_is_valid(a2_builder, c2_builder):
    for builder in (a2_builder, c2_builder):
        group = builder.group
        target = group.alcove((2, 1), "s2")
        gallery = builder.minimal_gallery(target)
        assert gallery.first == group.base_alcove()
        assert gallery.last == target
        assert len(gallery) == group.length(target) + 1
        assert gallery.is_valid(group)


def test_minimal_galleries_share_endpoints(a2, a2_builder):
    target = a2.alcove((2, 2), "s1s2s1")
    galleries = a2_builder.minimal_galleries(a2.base_alcove(), target)
    assert len(galleries) > 1
    assert all(len(g) == a2.length(target) + 1 for g in galleries)
    assert a2_builder.minimal_gallery(target) in galleries


def test_vertex_rejects_non_vertices(a2_builder):
    assert a2_builder.vertex((-2, -2)).special
    with pytest.raises(ValueError):
        a2_builder.vertex((F(1, 2), F(1, 2)))


def test_vertex_str(c2_builder):
    assert str(c2_builder.vertex((F(1, 2), 0))) == "v(1/2,0;ns)"
    assert str(c2_builder.vertex((0, 1))) == "v(0,1)"


@pytest.mark.parametrize(
    "builder_fixture, point, size",
    [
        ("a1_builder", (2,), 2),
        ("a2_builder", (-2, -2), 6),
        ("c2_builder", (0, 1), 8),
        ("c2_builder", (F(1, 2), 0), 4),
    ],
)
def test_star_is_a_cycle_starting_nearest_the_base(request, builder_fixture, point, size):
    builder = request.getfixturevalue(builder_fixture)
    group = builder.group
    star = builder.star(builder.vertex(point))
    assert len(star) == size
    assert len(set(star)) == size
    lengths = [group.length(a) for a in star]
    assert lengths[0] == min(lengths)
    if group.rank > 1:
        for a, b in zip(star, star[1:] + star[:1]):
            assert group.adjacent(a, b)


def test_vertices_within_first_layer(a2_builder, c2_builder):
    for builder in (a2_builder, c2_builder):
        vertices = builder.vertices_within(1)
        assert len(vertices) == 3
        assert all(builder.vertex_radius(v) == 1 for v in vertices)
        assert not set(v.point for v in vertices) & set(builder.group.base_vertices)


def test_q1_is_unique(a2_builder, c2_builder):
    for builder in (a2_builder, c2_builder):
        assert all(q1_is_unique(builder, v) for v in builder.vertices_within(6))


def test_local_positions(a1_builder, a2_builder, c2_builder):
    def positions(builder, vertex):
        _, q1 = builder.minimal_gallery_to_vertex(vertex)
        return sorted(m for _, m in builder.local_positions(vertex, q1))

    assert positions(a1_builder, a1_builder.vertex((2,))) == [1]
    assert positions(a2_builder, a2_builder.vertex((-2, -2))) == [2, 2, 3]
    special = [v for v in c2_builder.vertices_within(3) if v.special]
    non_special = [v for v in c2_builder.vertices_within(3) if not v.special]
    assert special and non_special
    assert positions(c2_builder, special[0]) == [2, 2, 3, 3, 4]
    assert positions(c2_builder, non_special[0]) == [2]


def test_vertex_in_base_alcove_is_rejected(a2_builder):
    with pytest.raises(VertexInBaseAlcove):
        a2_builder.minimal_gallery_to_vertex(a2_builder.vertex((0, 0)))


def test_z_map_fixes_vertex(a2_builder):
    vertex = a2_builder.vertex((-2, -2))
    _, q1 = a2_builder.minimal_gallery_to_vertex(vertex)
    for q2prime, _ in a2_builder.local_positions(vertex, q1):
        z = a2_builder.z_map(vertex, q1, q2prime)
        assert a2_builder.group.apply(z, q1) == q2prime
        assert z.apply_point(vertex.point) == vertex.point
    with pytest.raises(NoSuchIsometry):
        a2_builder.z_map(vertex, q1, a2_builder.group.base_alcove())


def test_a1_model_gallery(a1_builder):
    vertex = a1_builder.vertex((2,))
    (spec,) = list(a1_builder.superpiece_specs(vertex))
    assert [a.barycenter for a in spec.omega] == [(F(1, 2),), (F(3, 2),), (F(5, 2),), (F(7, 2),)]
    assert spec.radius == 1
    assert spec.m == 1
    assert spec.fold_start == 2


def test_model_galleries_are_valid(a2_builder, c2_builder):
    for builder in (a2_builder, c2_builder):
        group = builder.group
        for vertex in builder.vertices_within(4):
            for spec in builder.superpiece_specs(vertex):
                assert spec.omega.is_valid(group)
                assert len(spec.gamma) == builder.vertex_radius(vertex) + 1
                assert len(spec.gamma_f) == len(spec.gamma)
                assert spec.omega[spec.fold_start] == spec.q2prime


def test_assemble_omega_rejects_foreign_gamma(a2, a2_builder):
    vertex = a2_builder.vertex((-2, -2))
    spec = next(a2_builder.superpiece_specs(vertex))
    with pytest.raises(ValueError):
        a2_builder.assemble_omega(vertex, spec.q2prime, gamma=Gallery((a2.base_alcove(),)))


def test_superpiece_map_ignores_choice_of_minimal_gallery(a2, a2_builder):
    for vertex in a2_builder.vertices_within(3):
        for spec in a2_builder.superpiece_specs(vertex):
            expected = superpiece_map(a2, spec)
            for gamma in a2_builder.minimal_galleries(a2.base_alcove(), spec.q1)[:4]:
                try:
                    other = a2_builder.assemble_omega(vertex, spec.q2prime, gamma=gamma)
                except OmegaSelfIntersects:
                    continue
                assert superpiece_map(a2, other) == expected
