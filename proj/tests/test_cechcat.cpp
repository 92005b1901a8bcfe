#include "helpers.hpp"
#include "qspec/cechcat.hpp"

using namespace qspec;
using testing::mat;
using testing::throws_code;

namespace {

FiniteCategory chain3() {
  return FiniteCategory::create({"A", "B", "C"}, {{0, 1}, {1, 2}}, {{"a"}, {"b"}, {"c"}});
}

// 0 <= 1, 2 <= 3
FiniteCategory diamond() {
  return FiniteCategory::create({"0", "1", "2", "3"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {{"0"}, {"1"}, {"2"}, {"3"}});
}

FiniteSpace sierpinski() { return FiniteSpace::from_opens({"a", "b"}, {0b00, 0b01, 0b11}); }

// opens {}, {a}, {a,b}, {a,c}, {a,b,c}
FiniteSpace three_point() { return FiniteSpace::from_opens({"a", "b", "c"}, {0, 0b001, 0b011, 0b101, 0b111}); }

// [I 0] from dim c to dim r
Matrix proj(Eigen::Index r, Eigen::Index c) { return Matrix::Identity(r, c); }

TransversalityOracle oracle_from_bits(const FiniteCategory& cat, unsigned bits) {
  TransversalityOracle o;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    o.objects[cat.name(i)] = (bits >> i & 1) != 0;
    for (const std::string& pt : cat.spec(i)) o.points[pt] = (bits >> i & 1) != 0;
  }
  return o;
}

}  // namespace

TEST_SUITE("cechcat") {
  TEST_CASE("finite categories") {
    const FiniteCategory c = chain3();
    CHECK(c.min_neighborhood(1) == ObjectSet{1, 2});
    CHECK(c.min_neighborhood(0) == ObjectSet{0, 1, 2});
    CHECK(c.min_neighborhood(2) == ObjectSet{2});
    CHECK(c.least() == std::optional<std::size_t>(0));
    CHECK(c.leq(0, 2));
    CHECK_FALSE(c.leq(2, 0));
    CHECK(c.is_up_closed({1, 2}));
    CHECK_FALSE(c.is_up_closed({0, 2}));
    CHECK(c.lattice_meet({0, 1, 2}) == 0);
    CHECK(c.lattice_join({0, 1}) == 1);
    CHECK(c.meet({}) == std::optional<std::size_t>(2));
    CHECK(c.is_complete_lattice());
    CHECK(c.index_of("B") == 1);
    CHECK(throws_code([&] { (void)c.index_of("Z"); }, ErrorCode::UnknownObject));
    CHECK(throws_code([&] { (void)c.min_neighborhood(7); }, ErrorCode::UnknownObject));
    CHECK(throws_code([] { FiniteCategory::create({"A", "B"}, {{0, 1}, {1, 0}}); }, ErrorCode::InvalidInput));
    CHECK(throws_code([] { FiniteCategory::create({"A"}, {{0, 3}}); }, ErrorCode::InvalidInput));

    const FiniteCategory anti = FiniteCategory::create({"A", "B"}, {});
    CHECK_FALSE(anti.meet({0, 1}).has_value());
    CHECK_FALSE(anti.is_complete_lattice());
    CHECK(throws_code([&] { (void)anti.lattice_meet({0, 1}); }, ErrorCode::NotALattice));

    const FiniteCategory sub = diamond().subcategory({1, 2, 3});
    CHECK(sub.size() == 3);
    CHECK(sub.name(0) == "1");
    CHECK_FALSE(sub.least().has_value());
  }

  TEST_CASE("enumeration counts") {
    const std::size_t posets[] = {1, 1, 2, 7, 40, 357};
    for (std::size_t n = 0; n <= 5; ++n) CHECK(enumerate_posets(n).size() == posets[n]);
    const std::size_t tops[] = {1, 1, 4, 29, 355};
    for (std::size_t n = 0; n <= 4; ++n) CHECK(enumerate_topologies(n).size() == tops[n]);
  }

  TEST_CASE("finite spaces") {
    const FiniteSpace s = sierpinski();
    CHECK(s.open_count() == 3);
    CHECK(s.open_name(1) == "{a}");
    CHECK(s.open_index(0b11) == s.whole_index());
    CHECK_FALSE(s.find_open(0b10).has_value());
    CHECK(throws_code([] { FiniteSpace::from_opens({"a", "b"}, {0, 0b01, 0b10}); }, ErrorCode::InvalidInput));
    const FiniteSpace o = FiniteSpace::from_order({"a", "b", "c"}, {{0, 1}, {0, 2}});
    CHECK(o.open_count() == 5);
    CHECK(o.find_open(0b110).has_value());
    CHECK_FALSE(o.find_open(0b001).has_value());
  }

  TEST_CASE("presheaf category meets and joins") {
    const Presheaf p = function_presheaf(three_point());
    const FiniteCategory cat = presheaf_category(p);
    const FiniteSpace& s = p.space();
    for (std::size_t v = 0; v < s.open_count(); ++v)
      for (std::size_t w = 0; w < s.open_count(); ++w) {
        const auto uni = s.find_open(s.open(v) | s.open(w));
        const auto inter = s.find_open(s.open(v) & s.open(w));
        REQUIRE(uni.has_value());
        REQUIRE(inter.has_value());
        const ObjectSet pair = v == w ? ObjectSet{v} : v < w ? ObjectSet{v, w} : ObjectSet{w, v};
        CHECK(cat.lattice_meet(pair) == *uni);
        CHECK(cat.lattice_join(pair) == *inter);
      }
    CHECK(cat.least() == std::optional<std::size_t>(s.whole_index()));
    CHECK(cat.min_neighborhood(s.whole_index()).size() == cat.size());
  }

  TEST_CASE("roundtrip examples") {
    // constant presheaf on the Sierpinski space, zero on the empty open, which is an object too
    const Presheaf c = Presheaf::create(sierpinski(), {0, 1, 1}, {{{2, 1}, mat({{1}})}});
    const RoundtripReport r = presheaf_roundtrip(c);
    CHECK(r.category.size() == 3);
    CHECK(r.category.leq(2, 1));
    CHECK(r.category.leq(1, 0));
    CHECK(r.identical);

    const Presheaf distinct = Presheaf::create(three_point(), {0, 1, 2, 3, 4},
                                              {{{2, 1}, proj(1, 2)}, {{3, 1}, proj(1, 3)}, {{4, 2}, proj(2, 4)},
                                               {{4, 3}, proj(3, 4)}});
    CHECK(presheaf_roundtrip(distinct).identical);
    CHECK(presheaf_roundtrip(function_presheaf(three_point())).identical);

    const Presheaf single = Presheaf::create(FiniteSpace::from_opens({}, {0}), {2}, {});
    CHECK(presheaf_category(single).size() == 1);
    CHECK(presheaf_roundtrip(single).identical);

    for (std::size_t n = 1; n <= 3; ++n)
      for (const FiniteSpace& s : enumerate_topologies(n)) CHECK(presheaf_roundtrip(function_presheaf(s)).identical);
  }

  TEST_CASE("functoriality") {
    const FiniteSpace s = FiniteSpace::from_opens({"a", "b", "c"}, {0, 0b001, 0b011, 0b111});
    std::map<Presheaf::Key, Matrix> maps{{{3, 2}, mat({{1}})}, {{2, 1}, mat({{1}})}, {{3, 1}, mat({{2}})}};
    CHECK(throws_code([&] { Presheaf::create(s, {0, 1, 1, 1}, maps); }, ErrorCode::FunctorialityViolated));
    maps[{3, 1}] = mat({{1}});
    CHECK_NOTHROW(Presheaf::create(s, {0, 1, 1, 1}, maps));
    std::map<Presheaf::Key, Matrix> bad = maps;
    bad[{3, 2}] = mat({{1, 0}});
    CHECK(throws_code([&] { Presheaf::create(s, {0, 1, 1, 1}, bad); }, ErrorCode::DimensionMismatch));
    // composed through the intermediate open
    const Presheaf p = Presheaf::create(s, {0, 1, 1, 1}, {{{3, 2}, mat({{2}})}, {{2, 1}, mat({{3}})}});
    CHECK(p.restriction(3, 1) == mat({{6}}));
  }

  TEST_CASE("cech examples") {
    const FiniteSpace s = three_point();
    const std::vector<std::size_t> basis{s.open_index(0b011), s.open_index(0b101)};

    const Presheaf zero = Presheaf::create(s, {0, 0, 0, 0, 0}, {});
    const CechReport z = cech_exactness(zero, basis, s.whole_index());
    CHECK(z.exact);
    for (const Matrix& m : z.cech.complex.maps) CHECK(m.size() == 0);

    const Presheaf fp = function_presheaf(s);
    const CechReport r = cech_exactness(fp, basis, s.whole_index());
    CHECK(r.cech.complex.dims == std::vector<std::size_t>{3, 4, 6, 10, 18, 34});
    CHECK(r.homology.ranks == std::vector<std::size_t>{3, 1, 5, 5, 13});
    CHECK(r.exact);
    CHECK(is_cech_category(fp, basis));
    CHECK(check_complex(r.cech.complex).ok);

    // one basis element over its own open: 0 -> B -> B -> B -> ... with maps id, 0, id, 0
    const std::size_t b = s.open_index(0b011);
    const CechReport one = cech_exactness(fp, {b}, b);
    CHECK(one.exact);
    REQUIRE(one.cech.complex.maps.size() >= 3);
    CHECK(one.cech.complex.maps[0] == Matrix::Identity(2, 2));
    CHECK(one.cech.complex.maps[1].isZero());
    CHECK(one.cech.complex.maps[2] == Matrix::Identity(2, 2));

    CHECK(throws_code([&] { cech_complex(fp, {b}, s.whole_index()); }, ErrorCode::BasisNotCovering));
    // {a} contains no element of either basis
    CHECK(basis_failure(fp, {b}) == std::optional<std::size_t>(1));
    CHECK(basis_failure(fp, basis) == std::optional<std::size_t>(1));
    CHECK_FALSE(basis_failure(fp, {1, 2, 3}).has_value());
  }

  TEST_CASE("one basis element below U") {
    // basis {a} over U = {a, b}: the augmentation is a projection, not exact
    const Presheaf fp = function_presheaf(sierpinski());
    CechOptions opts;
    opts.require_covering = false;
    const CechReport r = cech_exactness(fp, {1}, 2, opts);
    CHECK(r.cech.complex.maps[0] == mat({{1, 0}}));
    CHECK_FALSE(r.exact);
    // an isomorphic augmentation gives exactness
    const Presheaf c = Presheaf::create(sierpinski(), {0, 1, 1}, {{{2, 1}, mat({{1}})}});
    CHECK(cech_exactness(c, {1}, 2, opts).exact);
  }

  TEST_CASE("property: cech d o d vanishes on random topologies") {
    for (std::size_t n = 1; n <= 3; ++n)
      for (const FiniteSpace& s : enumerate_topologies(n)) {
        const Presheaf fp = function_presheaf(s);
        for (std::size_t u = 1; u < s.open_count(); ++u) {
          std::vector<std::size_t> basis;
          for (std::size_t v = 1; v < s.open_count() && basis.size() < 2; ++v)
            if ((s.open(v) & ~s.open(u)) == 0) basis.push_back(v);
          CechOptions opts;
          opts.require_covering = false;
          const CechComplex c = cech_complex(fp, basis, u, opts);
          const ComplexCheck k = check_complex(c.complex);
          CHECK(k.ok);
          for (double res : k.residuals) CHECK(res == 0.0);
        }
      }
  }

  TEST_CASE("category spectrum on a chain") {
    const FiniteCategory c = chain3();
    TransversalityOracle o{{{"A", false}, {"B", true}, {"C", true}}, {{"a", false}, {"b", true}, {"c", true}}};
    const CategorySpectrumResult r = category_spectrum(c, o);
    CHECK(r.res == ObjectSet{1, 2});
    CHECK(r.sigma == ObjectSet{0});
    CHECK(r.res_p == std::vector<std::string>{"b", "c"});
    CHECK(r.sigma_p == std::vector<std::string>{"a"});
    CHECK(r.taylor == std::vector<std::string>{"a"});

    o.objects["C"] = false;
    const CategorySpectrumResult all = category_spectrum(c, o);
    CHECK(all.res.empty());
    CHECK(all.sigma == ObjectSet{0, 1, 2});

    TransversalityOracle missing = o;
    missing.objects.erase("B");
    CHECK(throws_code([&] { category_spectrum(c, missing); }, ErrorCode::OracleIncomplete));
    missing = o;
    missing.points.erase("c");
    CHECK(throws_code([&] { category_spectrum(c, missing); }, ErrorCode::OracleIncomplete));
  }

  TEST_CASE("spectral mapping on the diamond") {
    const FiniteCategory d = diamond();
    for (unsigned bits = 0; bits < 16; ++bits) {
      const TransversalityOracle o = oracle_from_bits(d, bits);
      const CategorySpectrumResult r = category_spectrum(d, o);
      CHECK(d.is_up_closed(r.res));
      CHECK(r.res.size() + r.sigma.size() == d.size());
      if (!(bits & 1)) CHECK(r.sigma.front() == 0);
      for (std::size_t a = 0; a < d.size(); ++a) {
        const SpectralMappingReport m = spectral_mapping_check(d, o, a);
        CHECK(m.sigma_equal);
        CHECK(m.sigma_p_equal);
        CHECK(m.taylor_equal);
      }
    }
  }

  TEST_CASE("property: res is up-closed on all small posets") {
    for (std::size_t n = 1; n <= 4; ++n)
      for (const FiniteCategory& cat : enumerate_posets(n))
        for (unsigned bits = 0; bits < (1u << n); ++bits) {
          const CategorySpectrumResult r = category_spectrum(cat, oracle_from_bits(cat, bits));
          CHECK(cat.is_up_closed(r.res));
          for (std::size_t a : r.res)
            for (std::size_t b = 0; b < n; ++b)
              if (cat.leq(a, b)) CHECK(((bits >> b) & 1) == 1);
        }
  }

  TEST_CASE("presheaf spectrum matches the category") {
    for (std::size_t n = 1; n <= 2; ++n)
      for (const FiniteSpace& s : enumerate_topologies(n)) {
        const Presheaf fp = function_presheaf(s);
        for (unsigned bits = 0; bits < (1u << s.open_count()); ++bits) {
          std::map<std::string, bool> verdicts;
          for (std::size_t v = 0; v < s.open_count(); ++v) verdicts[s.open_name(v)] = (bits >> v & 1) != 0;
          for (PointMask spec = 0; spec <= s.full(); ++spec) CHECK(presheaf_spectrum_check(fp, verdicts, spec).equal);
        }
      }
  }

  TEST_CASE("koszul oracle") {
    const QPair scalar = validate_qpair(mat({{1}}), mat({{0}}), QParameter(0.5));
    const FiniteCategory c = FiniteCategory::create({"A", "B"}, {{0, 1}}, {{"p1", "p3"}, {"p3"}});
    const std::map<std::string, AxisPoint> pts{{"p1", {1.0, 0.0}}, {"p3", {3.0, 0.0}}};
    const TransversalityOracle o = koszul_oracle(c, scalar, pts);
    CHECK_FALSE(o.points.at("p1"));
    CHECK(o.points.at("p3"));
    CHECK_FALSE(o.objects.at("A"));
    CHECK(o.objects.at("B"));
    const CategorySpectrumResult r = category_spectrum(c, o);
    CHECK(r.sigma == ObjectSet{0});
    CHECK(r.taylor == std::vector<std::string>{"p1"});
    CHECK(throws_code([&] { koszul_oracle(c, scalar, {{"p1", {1.0, 0.0}}}); }, ErrorCode::OracleIncomplete));
  }
}
