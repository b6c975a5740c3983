// temporary sanity probe; not part of the project
#include <cstdio>

#include "growthlab/experiments.hpp"
#include "growthlab/spectral.hpp"

using namespace growthlab;

int main() {
  // fields
  auto f4 = make_field(2, 2);
  printf("F4 modulus:");
  for (auto c : f4->modulus()) printf(" %u", c);
  printf("  (expect 1 1 1)\n");
  printf("F4 x*x = %u (expect 3)\n", f4->mul(2, 2));
  auto f5 = make_field(5, 1);
  printf("F5 inv2 = %u (expect 3)\n", f5->inv(2));
  auto f9 = make_field(3, 2);
  printf("F9 modulus:");
  for (auto c : f9->modulus()) printf(" %u", c);
  printf("  (expect 1 0 1)\n");

  // groups
  auto sl23 = GroupSpec::make(Family::SL, 2, make_field(3, 1));
  auto sl25 = GroupSpec::make(Family::SL, 2, make_field(5, 1));
  auto sl33 = GroupSpec::make(Family::SL, 3, make_field(3, 1));
  auto psl23 = GroupSpec::make(Family::PSL, 2, make_field(3, 1));
  printf("orders: SL23=%llu SL25=%llu SL33=%llu PSL23=%llu (24 120 5616 12)\n",
         (unsigned long long)group_order(*sl23), (unsigned long long)group_order(*sl25),
         (unsigned long long)group_order(*sl33), (unsigned long long)group_order(*psl23));
  printf("enums: SL23=%llu SL25=%llu SL33=%llu PSL23=%llu\n",
         (unsigned long long)enumerate_group(sl23, 1e6).size(),
         (unsigned long long)enumerate_group(sl25, 1e6).size(),
         (unsigned long long)enumerate_group(sl33, 1e6).size(),
         (unsigned long long)enumerate_group(psl23, 1e6).size());

  // char poly + inverse
  auto u = make_element(sl25, {1, 1, 0, 1});
  auto ui = g_inv(u);
  printf("inv [[1,1],[0,1]] over F5 = %u %u %u %u (expect 1 4 0 1)\n", ui.m[0],
         ui.m[1], ui.m[2], ui.m[3]);
  auto a = make_element(sl23, {0, 2, 1, 0});
  auto cp = char_poly(a);
  printf("charpoly [[0,2],[1,0]] F3 coeffs:");
  for (auto c : cp.coeffs) printf(" %u", c);
  printf(" (expect 1 0 1), rs=%d (expect 1)\n", (int)is_regular_semisimple(a));

  // torus structure SL(2,3)
  auto tori = enumerate_maximal_tori(sl23, 1000);
  printf("SL(2,3): %zu tori:", tori.size());
  for (auto& t : tori)
    printf(" [|T|=%llu |Tr|=%llu N=%llu]", (unsigned long long)t.torus_order,
           (unsigned long long)t.regular_part.size(),
           (unsigned long long)t.normalizer_order.value_or(0));
  printf(" (expect 3 tori, |T|=4, |Tr|=2, N=8)\n");

  auto tori5 = enumerate_maximal_tori(sl25, 1000);
  int split = 0, nonsplit = 0;
  for (auto& t : tori5) {
    if (t.split_type == SplitType::split) ++split;
    if (t.split_type == SplitType::nonsplit) ++nonsplit;
  }
  printf("SL(2,5): %zu tori, split=%d nonsplit=%d (expect 25, 15, 10)\n",
         tori5.size(), split, nonsplit);

  // diameter SL(2,3), standard symmetrized pair + I
  auto gens = parse_generators("1,1;0,1\n1,0;1,1", sl23);
  ElementSet s = ElementSet::from_elements(gens);
  s = symmetrize(s, true);
  auto bfs = bfs_layers(s, 1000);
  printf("SL(2,3) diameter = %d, balls:", bfs.diameter ? (int)*bfs.diameter : -1);
  for (auto b : bfs.ball_sizes) printf(" %llu", (unsigned long long)b);
  printf("\n");

  // growth report on symmetrized pair in SL(2,5)
  auto gens5 = parse_generators("1,1;0,1\n1,0;1,1", sl25);
  ElementSet s5 = symmetrize(ElementSet::from_elements(gens5), true);
  auto rep = growth_report(s5);
  printf("SL(2,5) pair: |A|=%llu |A2|=%llu |A3|=%llu eps=%.4f\n",
         (unsigned long long)rep.size_a, (unsigned long long)rep.size_a2,
         (unsigned long long)rep.size_a3, rep.epsilon_hat());

  // spectral: K6 on SL(2,2)
  auto sl22 = GroupSpec::make(Family::SL, 2, make_field(2, 1));
  auto g22 = enumerate_group(sl22, 100);
  ElementSet k6(sl22);
  g22.for_each_mat([&](const Mat& m) {
    if (m != sl22->identity()) k6.insert_mat(m);
  });
  auto sr = second_eigenvalue(k6, 1e-10, 100000, 42, 1000);
  printf("K6 lambda = %.12f (expect 0.2), iters=%llu\n", sr.lambda_hat,
         (unsigned long long)sr.iterations);

  // disconnected: torus generator in SL(2,5)
  ElementSet tor(sl25);
  tor.insert(make_element(sl25, {2, 0, 0, 3}));
  tor = symmetrize(tor, false);
  auto sd = second_eigenvalue(tor, 1e-8, 100000, 7, 1000);
  printf("disconnected lambda = %.12f (expect 1)\n", sd.lambda_hat);

  // MVW
  std::vector<std::vector<int64_t>> S = {{1, 3, 0, 1}, {1, 0, 3, 1}};
  auto m3 = mvw_surjectivity(S, 2, 3, 1e6);
  auto m5 = mvw_surjectivity(S, 2, 5, 1e6);
  auto m35 = mvw_surjectivity(S, 2, 35, 1e6);
  printf("MVW mod3: %d (%llu/%llu) mod5: %d (%llu/%llu) mod35: %d (%llu/%llu)\n",
         (int)m3.surjective, (unsigned long long)m3.closure_size, (unsigned long long)m3.order,
         (int)m5.surjective, (unsigned long long)m5.closure_size, (unsigned long long)m5.order,
         (int)m35.surjective, (unsigned long long)m35.closure_size, (unsigned long long)m35.order);

  // centralizer dual route on SL(2,7)
  auto sl27 = GroupSpec::make(Family::SL, 2, make_field(7, 1));
  Rng rng(5);
  GroupElement rs_el = random_element(sl27, rng);
  while (!is_regular_semisimple(rs_el)) rs_el = random_element(sl27, rng);
  auto c_enum = centralizer(rs_el, 1000);   // enumeration path (336 <= 1000)
  auto c_solve = centralizer(rs_el, 200);   // solve path (336 > 200, q^2=49 <= 200)
  printf("centralizer dual route: enum=%llu solve=%llu equal=%d\n",
         (unsigned long long)c_enum.size(), (unsigned long long)c_solve.size(),
         (int)(c_enum == c_solve));
  return 0;
}
