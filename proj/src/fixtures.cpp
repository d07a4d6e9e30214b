#include "cmx/fixtures.hpp"

#include <string>

namespace cmx::fixtures {

namespace {

std::string num(int v) { return std::to_string(v); }

// Triangulated strip on consecutive integer node labels [first, last]:
// path edges (i, i+1), chord edges (i, i+2), one triangle per chord.
// Edge ids follow the pattern e<tail>_<head>.
void add_strip(ComplexSpec& spec, LayerId layer, int first, int last) {
    auto eid = [](int a, int b) { return "e" + num(a) + "_" + num(b); };
    for (int i = first; i < last; ++i)
        spec.intra_edges.push_back({layer, eid(i, i + 1), num(i), num(i + 1)});
    for (int i = first; i + 2 <= last; ++i)
        spec.intra_edges.push_back({layer, eid(i, i + 2), num(i), num(i + 2)});
    for (int i = first; i + 2 <= last; ++i) {
        // walk i -> i+1 -> i+2 -> i
        spec.two_cells.push_back({layer, 0, 0, "t" + num(i),
                                  {{eid(i, i + 1), +1}, {eid(i + 1, i + 2), +1}, {eid(i, i + 2), -1}}});
    }
}

// Redundant quads over adjacent strip triangles: walk i -> i+1 -> i+3 -> i+2 -> i.
void add_strip_quads(ComplexSpec& spec, LayerId layer, int first, int last) {
    auto eid = [](int a, int b) { return "e" + num(a) + "_" + num(b); };
    for (int i = first; i + 3 <= last; ++i) {
        spec.two_cells.push_back({layer, 0, 0, "q" + num(i),
                                  {{eid(i, i + 1), +1},
                                   {eid(i + 1, i + 3), +1},
                                   {eid(i + 2, i + 3), -1},
                                   {eid(i, i + 2), -1}}});
    }
}

}  // namespace

ComplexSpec tri() {
    ComplexSpec spec;
    spec.layers = {{1, {"u1", "u2"}}, {2, {"v1"}}};
    spec.intra_edges = {{1, "e1", "u1", "u2"}};
    spec.cross_edges = {{1, 2, "x1", "u1", "v1"}, {1, 2, "x2", "u2", "v1"}};
    spec.two_cells = {{0, 1, 2, "T", {{"x1", -1}, {"x2", +1}, {"e1", +1}}}};
    return spec;
}

ComplexSpec fig2() {
    ComplexSpec spec;
    spec.layers = {{1, {"p1", "p2", "p3", "p4", "p5", "p6", "p7"}}, {2, {"q1", "q2", "q3"}}};
    spec.intra_edges = {
        {1, "e1", "p1", "p2"}, {1, "e2", "p2", "p3"}, {1, "e3", "p3", "p4"},
        {1, "e4", "p4", "p5"}, {1, "e5", "p5", "p6"}, {1, "e6", "p6", "p7"},
        {1, "e7", "p1", "p3"}, {1, "e8", "p2", "p4"}, {1, "e9", "p3", "p5"},
        {1, "e10", "p4", "p6"},
    };
    spec.cross_edges = {
        {1, 2, "x1", "p1", "q1"}, {1, 2, "x2", "p2", "q1"}, {1, 2, "x3", "p3", "q2"},
        {1, 2, "x4", "p4", "q2"}, {1, 2, "x5", "p5", "q3"}, {1, 2, "x6", "p6", "q3"},
    };
    // walk q1 -> p1 (x1 backward), p1 -> p2 (e1), p2 -> q1 (x2 forward)
    spec.two_cells = {{0, 1, 2, "T", {{"x1", -1}, {"x2", +1}, {"e1", +1}}}};
    return spec;
}

ComplexSpec fig3() {
    ComplexSpec spec;
    spec.layers = {{1, {"4", "5", "6", "8"}}, {2, {"10", "13"}}};
    spec.intra_edges = {{1, "e5_6", "5", "6"}, {1, "e6_8", "6", "8"}, {2, "e10_13", "10", "13"}};
    spec.cross_edges = {{1, 2, "x4_10", "4", "10"},
                        {1, 2, "x5_10", "5", "10"},
                        {1, 2, "x5_13", "5", "13"},
                        {1, 2, "x8_13", "8", "13"}};
    // Filled wedge at node 5: walk 5 -> 10 -> 13 -> 5.
    spec.two_cells = {{0, 1, 2, "w5", {{"x5_10", +1}, {"e10_13", +1}, {"x5_13", -1}}}};
    return spec;
}

ComplexSpec fig3_open() {
    ComplexSpec spec = fig3();
    spec.intra_edges.pop_back();  // drop e10_13
    spec.two_cells.clear();       // drop w5
    return spec;
}

ComplexSpec f3() {
    ComplexSpec spec;
    spec.layers.resize(3);
    for (int layer = 1; layer <= 3; ++layer) {
        spec.layers[layer - 1].id = layer;
        for (int i = 0; i < 9; ++i)
            spec.layers[layer - 1].nodes.push_back(num((layer - 1) * 9 + i + 1));
    }

    // Intra structure: strips on 1..9 and 10..18; layer 3 split into 19..23
    // and 24..27 so that an open cone can bridge the two components.
    add_strip(spec, 1, 1, 9);
    add_strip(spec, 2, 10, 18);
    add_strip(spec, 3, 19, 23);
    add_strip(spec, 3, 24, 27);

    auto eid = [](int a, int b) { return "e" + num(a) + "_" + num(b); };

    // Cross edges (1,2): ladder rungs plus two extra chords.
    for (int i = 1; i <= 9; ++i)
        spec.cross_edges.push_back({1, 2, "y" + num(i), num(i), num(i + 9)});
    spec.cross_edges.push_back({1, 2, "y10", "1", "11"});
    spec.cross_edges.push_back({1, 2, "y11", "2", "12"});

    // Cross edges (2,3): wedge hubs on layer 2 at 12, 14, 15, 17.
    spec.cross_edges.push_back({2, 3, "x1", "12", "19"});
    spec.cross_edges.push_back({2, 3, "x2", "12", "20"});
    spec.cross_edges.push_back({2, 3, "x3", "14", "21"});
    spec.cross_edges.push_back({2, 3, "x4", "14", "23"});
    spec.cross_edges.push_back({2, 3, "x5", "15", "23"});
    spec.cross_edges.push_back({2, 3, "x6", "15", "24"});
    spec.cross_edges.push_back({2, 3, "x7", "17", "26"});
    spec.cross_edges.push_back({2, 3, "x8", "17", "27"});

    // Remaining redundant intra cells.
    add_strip_quads(spec, 1, 1, 9);
    add_strip_quads(spec, 2, 10, 18);
    add_strip_quads(spec, 3, 19, 23);
    add_strip_quads(spec, 3, 24, 27);
    // walk 1 -> 2 -> 4 -> 5 -> 3 -> 1
    spec.two_cells.push_back({1, 0, 0, "p1",
                              {{eid(1, 2), +1},
                               {eid(2, 4), +1},
                               {eid(4, 5), +1},
                               {eid(3, 5), -1},
                               {eid(1, 3), -1}}});

    // (1,2) cells: ladder squares walk i -> i+1 -> i+10 -> i+9 -> i ...
    for (int i = 1; i <= 8; ++i) {
        spec.two_cells.push_back({0, 1, 2, "s" + num(i),
                                  {{eid(i, i + 1), +1},
                                   {"y" + num(i + 1), +1},
                                   {eid(i + 9, i + 10), -1},
                                   {"y" + num(i), -1}}});
    }
    // ... and two (0,1) triangles closing the extra chords.
    spec.two_cells.push_back({0, 1, 2, "ta", {{"y10", +1}, {eid(10, 11), -1}, {"y1", -1}}});
    spec.two_cells.push_back({0, 1, 2, "tb", {{"y11", +1}, {eid(11, 12), -1}, {"y2", -1}}});

    // (2,3) cells.  The wedges at hubs 12 and 14 are deliberately left empty
    // (they are the two holes of the flattened complex); the wedge at 15
    // stays open across the layer-3 components.
    // Filled (0,1) triangle at hub 17: walk 17 -> 26 -> 27 -> 17.
    spec.two_cells.push_back({0, 2, 3, "f17", {{"x7", +1}, {eid(26, 27), +1}, {"x8", -1}}});
    // (1,0) quad killing the layer-3 wedge at node 23: walk 14 -> 23 -> 15 -> 14.
    spec.two_cells.push_back({0, 2, 3, "a23", {{"x4", +1}, {"x5", -1}, {eid(14, 15), -1}}});
    // (1,1) cell tying x6 into the filled region:
    // walk 15 -> 24 -> 26 -> 17 -> 16 -> 15.
    spec.two_cells.push_back({0, 2, 3, "b24",
                              {{"x6", +1},
                               {eid(24, 26), +1},
                               {"x7", -1},
                               {eid(16, 17), -1},
                               {eid(15, 16), -1}}});
    // (1,1) cell tying x3 to x1: walk 14 -> 21 -> 19 -> 12 -> 13 -> 14.
    spec.two_cells.push_back({0, 2, 3, "d21",
                              {{"x3", +1},
                               {eid(19, 21), -1},
                               {"x1", -1},
                               {eid(12, 13), +1},
                               {eid(13, 14), +1}}});
    return spec;
}

}  // namespace cmx::fixtures
