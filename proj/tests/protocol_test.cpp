#include "braidlen/errors.hpp"
#include "braidlen/protocol.hpp"
#include "doctest.h"

using namespace braidlen;

namespace {

SubgroupGenerators gens(int n, std::size_t count, std::size_t letters, Rng& rng) {
  return SubgroupGenerators(random_generators(n, count, letters, rng));
}

}  // namespace

TEST_CASE("subgroup generators validation") {
  CHECK_THROWS_AS(SubgroupGenerators({}), validation_error);
  CHECK_THROWS_AS(SubgroupGenerators({Word::from_signed(3, {1}), Word::from_signed(4, {1})}), validation_error);
  CHECK_THROWS_AS(SubgroupGenerators({Word::from_signed(3, {1, -1})}), validation_error);
  Rng rng = seeded_rng(1);
  for (const auto& g : random_generators(6, 8, 1, rng)) CHECK_FALSE(equal(g, identity(6)));
}

TEST_CASE("assemble") {
  SubgroupGenerators g({Word::from_signed(4, {1, 2}), Word::from_signed(4, {3})});
  const std::vector<SignedFactor> f{{0, 1}, {1, -1}, {0, -1}};
  CHECK(assemble(g, f) == Word::from_signed(4, {1, 2, -3, -2, -1}));
  CHECK(assemble(g, std::vector<SignedFactor>{}) == identity(4));
  CHECK_THROWS_AS(assemble(g, std::vector<SignedFactor>{{2, 1}}), malformed_key);
  CHECK_THROWS_AS(assemble(g, std::vector<SignedFactor>{{0, 0}}), malformed_key);
}

TEST_CASE("keygen") {
  Rng rng = seeded_rng(2);
  const auto g = gens(8, 4, 10, rng);
  Rng r0 = seeded_rng(3);
  const auto zero = keygen(g, 0, r0);
  CHECK(zero.factors.empty());
  CHECK(zero.element == identity(8));

  Rng ra = seeded_rng(4), rb = seeded_rng(4);
  const auto ka = keygen(g, 6, ra);
  const auto kb = keygen(g, 6, rb);
  CHECK(ka.factors == kb.factors);
  CHECK(ka.element == kb.element);

  std::size_t adjacent_inverse = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng r = seeded_rng(s);
    const auto k = keygen(g, 4, r);
    REQUIRE(k.factors.size() == 4);
    for (std::size_t i = 1; i < k.factors.size(); ++i) adjacent_inverse += k.factors[i] == k.factors[i - 1].inverse();
    CHECK(k.element == assemble(g, k.factors));
  }
  CHECK(adjacent_inverse == 0);
}

TEST_CASE("publish") {
  Rng rng = seeded_rng(5);
  const auto alice = gens(10, 3, 12, rng);
  const auto bob = gens(10, 3, 12, rng);
  const auto none = make_private_key(alice, {});
  const auto pub = publish(none, bob);
  REQUIRE(pub.conjugates.size() == bob.size());
  for (std::size_t r = 0; r < bob.size(); ++r) CHECK(pub.conjugates[r] == canonical_word(bob[r]));

  CHECK_THROWS_AS(publish(none, SubgroupGenerators({Word::from_signed(5, {1})})), incompatible_words);

  const auto a = keygen(alice, 6, rng);
  const auto sent = publish(a, bob);
  std::size_t differs = 0;
  for (std::size_t r = 0; r < bob.size(); ++r) {
    const Word naive = conjugate(bob[r], a.element);
    CHECK(equal(sent.conjugates[r], naive));
    CHECK(sent.conjugates[r] == canonical_word(naive));
    differs += !(sent.conjugates[r] == naive);
  }
  CHECK(differs == bob.size());
}

TEST_CASE("shared keys") {
  Rng rng = seeded_rng(6);
  const auto alice = gens(8, 3, 10, rng);
  const auto bob = gens(8, 3, 10, rng);
  const auto a = keygen(alice, 3, rng);
  const auto b = keygen(bob, 3, rng);
  const auto none_a = make_private_key(alice, {});
  const auto none_b = make_private_key(bob, {});

  CHECK(equal(derive_shared_alice(none_a, publish(b, alice)), identity(8)));
  CHECK(equal(derive_shared_bob(b, publish(none_a, bob)), identity(8)));
  CHECK(equal(derive_shared_alice(a, publish(none_b, alice)), identity(8)));
  CHECK(equal(derive_shared_bob(none_b, publish(a, bob)), identity(8)));

  const Word ka = derive_shared_alice(a, publish(b, alice));
  const Word kb = derive_shared_bob(b, publish(a, bob));
  CHECK(equal(ka, kb));
  // [a, b] = a^{-1} b^{-1} a b
  CHECK(equal(ka, concat(concat(inverse(a.element), inverse(b.element)), concat(a.element, b.element))));

  // both secrets are the same shared generator word: [w, w] = e
  const Word common = Word::from_signed(8, {1, 2, -5, 3});
  SubgroupGenerators ga({common, alice[0]});
  SubgroupGenerators gb({common, bob[0]});
  const auto sa = make_private_key(ga, {{0, 1}});
  const auto sb = make_private_key(gb, {{0, 1}});
  CHECK(equal(derive_shared_alice(sa, publish(sb, ga)), identity(8)));
  CHECK(equal(derive_shared_bob(sb, publish(sa, gb)), identity(8)));

  PrivateKey broken{{{7, 1}}, a.element};
  CHECK_THROWS_AS(derive_shared_alice(broken, publish(b, alice)), malformed_key);
}

TEST_CASE("seeded sessions agree") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng = seeded_rng(s, {12});
    SessionParams p;
    p.generator_letters = 10;
    const auto inst = generate_session(p, rng);
    CHECK_NOTHROW(inst.validate());
    REQUIRE(inst.fixture.has_value());
    const auto a = make_private_key(inst.alice_generators, inst.fixture->alice);
    const auto b = make_private_key(inst.bob_generators, inst.fixture->bob);
    CHECK(equal(derive_shared_alice(a, inst.bob_transmission), derive_shared_bob(b, inst.alice_transmission)));
  }
  Rng r1 = seeded_rng(77), r2 = seeded_rng(77);
  SessionParams p;
  const auto i1 = generate_session(p, r1);
  const auto i2 = generate_session(p, r2);
  CHECK(i1.alice_transmission.conjugates == i2.alice_transmission.conjugates);
  CHECK(i1.fixture->alice == i2.fixture->alice);
}

TEST_CASE("instance validation") {
  Rng rng = seeded_rng(9);
  SessionParams p;
  p.strands = 6;
  p.generator_letters = 6;
  auto inst = generate_session(p, rng);
  inst.alice_transmission.conjugates.pop_back();
  CHECK_THROWS_AS(inst.validate(), validation_error);
}

TEST_CASE("Ko-Lee exchange") {
  KoLeeParams params;
  Rng rng = seeded_rng(10);
  params.base = random_word(8, 20, rng);
  CHECK_NOTHROW(params.validate());

  const auto trivial = kolee_exchange(params, identity(8), identity(8));
  CHECK(trivial.alice_key == canonical_word(params.base));
  CHECK(trivial.bob_key == canonical_word(params.base));

  for (int t = 0; t < 20; ++t) {
    const Word a = random_left_word(params, 15, rng);
    const Word b = random_right_word(params, 15, rng);
    CHECK(equal(concat(a, b), concat(b, a)));
    const auto keys = kolee_exchange(params, a, b);
    CHECK(equal(keys.alice_key, keys.bob_key));
  }

  // sigma_n links the two halves.
  CHECK_THROWS_AS(kolee_exchange(params, Word::from_signed(8, {4}), identity(8)), subgroup_violation);
  CHECK_THROWS_AS(kolee_exchange(params, identity(8), Word::from_signed(8, {4})), subgroup_violation);
  CHECK_THROWS_AS(kolee_exchange(params, identity(8), Word::from_signed(8, {2})), subgroup_violation);
  CHECK_THROWS_AS(kolee_exchange(params, Word::from_signed(8, {5}), identity(8)), subgroup_violation);
  for (int t = 0; t < 10; ++t) {
    const Word left = random_left_word(params, 30, rng);
    const Word right = random_right_word(params, 30, rng);
    for (const auto& l : left.letters()) CHECK(l.index < 4);
    for (const auto& l : right.letters()) CHECK(l.index > 4);
  }

  KoLeeParams bad;
  bad.base = Word(9);
  CHECK_THROWS(bad.validate());
}

TEST_CASE("transmissions hide the spelling of the secret") {
  Rng rng = seeded_rng(14);
  const auto alice = gens(9, 3, 10, rng);
  const auto bob = gens(9, 3, 10, rng);
  const auto a = keygen(alice, 4, rng);
  // same element, different spelling: pad with a cancelling pair and a relator
  auto letters = a.element.letters();
  letters.insert(letters.begin(), {Letter{2, 1}, Letter{2, -1}});
  const Word padded = concat(Word(9, letters), Word::from_signed(9, {1, 2, 1, -2, -1, -2}));
  REQUIRE(equal(padded, a.element));
  const PrivateKey respelled{a.factors, padded};
  CHECK(publish(respelled, bob).conjugates == publish(a, bob).conjugates);
}

TEST_CASE("conjugating factor by factor matches conjugating the product") {
  Rng rng = seeded_rng(15);
  for (int t = 0; t < 20; ++t) {
    const auto alice = gens(7, 3, 8, rng);
    const Word x = random_word(7, 12, rng);
    const auto a = keygen(alice, 4, rng);
    // (a_1 ... a_d)^{-1} x (a_1 ... a_d) = a_d^{-1} (... (a_1^{-1} x a_1) ...) a_d
    Word step = x;
    for (const auto& f : a.factors) step = conjugate(step, assemble(alice, std::vector<SignedFactor>{f}));
    CHECK(equal(step, conjugate(x, a.element)));
  }
}
