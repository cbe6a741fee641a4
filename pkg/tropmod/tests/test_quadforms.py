import random
from fractions import Fraction

from django.test import SimpleTestCase

from tropmod import exact
from tropmod.acceptance import random_definite_form
from tropmod.exceptions import FormError, MatroidError
from tropmod.matroids import ZonotopalCone, mk4_matrix, u23_matrix, zonotopal_cone
from tropmod.quadforms import (
    G2Class,
    QuadForm,
    classify_g2,
    cone_membership,
    delone_subdivision,
    g2_equivalent,
    in_fundamental_cone,
    is_positive_definite,
    is_valid_form,
    parse_matrix,
    polytope_volume,
    random_unimodular,
    selling_parameters,
)

SQUARE = ((0, 0), (0, 1), (1, 0), (1, 1))
A2 = [[2, -1], [-1, 2]]


class QuadFormTests(SimpleTestCase):
    def test_parse_matrix(self):
        form = parse_matrix('1/2, 0; 0, 3')
        self.assertEqual(form.entries, ((Fraction(1, 2), 0), (0, 3)))
        self.assertEqual(str(form), '1/2,0;0,3')

    def test_parse_errors(self):
        for text in ('1,2;3,4', 'a,b;b,c', '1,2;2', ''):
            with self.subTest(text=text), self.assertRaises(FormError):
                parse_matrix(text)

    def test_semidefiniteness(self):
        self.assertTrue(is_valid_form([[1, 1], [1, 1]]))
        self.assertFalse(is_positive_definite([[1, 1], [1, 1]]))
        self.assertTrue(is_positive_definite(A2))
        self.assertFalse(is_valid_form([[0, 1], [1, 0]]))
        self.assertFalse(is_valid_form([[1, 2], [2, 1]]))
        self.assertTrue(is_valid_form([[0, 0], [0, 0]]))

    def test_transform(self):
        form = QuadForm.from_rows([[1, 0], [0, 1]])
        self.assertEqual(form.transform([[1, 1], [0, 1]]), QuadForm.from_rows([[1, 1], [1, 2]]))

    def test_random_unimodular(self):
        rng = random.Random(2)
        for g in (2, 3):
            self.assertEqual(abs(exact.det(random_unimodular(rng, g))), 1)


class DeloneTests(SimpleTestCase):
    def test_square_lattice(self):
        period = delone_subdivision([[1, 0], [0, 1]])
        self.assertEqual(period.cells, (SQUARE,))
        self.assertEqual(period.combinatorial_type(), 'D2')

    def test_hexagonal_lattice(self):
        period = delone_subdivision(A2)
        self.assertEqual(period.cells, (((0, 0), (0, 1), (1, 1)), ((0, 0), (1, 0), (1, 1))))
        self.assertEqual(period.combinatorial_type(), 'D1')

    def test_rectangular_lattice(self):
        self.assertEqual(delone_subdivision([[1, 0], [0, 2]]).combinatorial_type(), 'D2')

    def test_dimension_one(self):
        self.assertEqual(delone_subdivision([[3]]).cells, (((0,), (1,)),))

    def test_cube(self):
        period = delone_subdivision([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        self.assertEqual(period.vertex_counts(), [8])

    def test_volumes(self):
        self.assertEqual(polytope_volume(SQUARE), 1)
        self.assertEqual(polytope_volume([(0, 0), (1, 0), (1, 1)]), Fraction(1, 2))

    def test_errors(self):
        with self.assertRaisesMessage(FormError, 'definite only'):
            delone_subdivision([[1, 0], [0, 0]])
        with self.assertRaises(FormError):
            delone_subdivision([[1, 2], [2, 1]])
        with self.assertRaises(FormError):
            delone_subdivision(A2, window=1)
        with self.assertRaises(FormError):
            delone_subdivision([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    def test_json(self):
        self.assertEqual(delone_subdivision([[1, 0], [0, 1]]).to_json(), {'g': 2, 'cells': [[list(v) for v in SQUARE]]})

    def test_agrees_with_reduction(self):
        rng = random.Random(17)
        expected = {G2Class.D1: 'D1', G2Class.D2: 'D2'}
        for _ in range(100):
            form = random_definite_form(rng)
            period = delone_subdivision(form, 3)
            self.assertEqual(period.combinatorial_type(), expected[classify_g2(form).kind], str(form))
            self.assertEqual(delone_subdivision(form, 4), period)


class ReductionTests(SimpleTestCase):
    def test_named_classes(self):
        self.assertEqual(classify_g2([[1, 0], [0, 1]]).kind, G2Class.D2)
        self.assertEqual(classify_g2(A2).kind, G2Class.D1)
        self.assertEqual(classify_g2([[1, 0], [0, 0]]).kind, G2Class.D3)
        self.assertEqual(classify_g2([[0, 0], [0, 0]]).kind, G2Class.D4)
        self.assertEqual(classify_g2(A2).reduced, QuadForm.from_rows(A2))

    def test_reducing_matrix(self):
        rng = random.Random(4)
        for _ in range(50):
            form = random_definite_form(rng).transform(random_unimodular(rng))
            reduction = classify_g2(form)
            self.assertEqual(form.transform(reduction.transform), reduction.reduced)
            self.assertTrue(in_fundamental_cone(reduction.reduced))

    def test_invariance_under_unimodular_change(self):
        rng = random.Random(8)
        for _ in range(100):
            form = random_definite_form(rng)
            self.assertTrue(g2_equivalent(form, form.transform(random_unimodular(rng))))

    def test_rank_one_orbits(self):
        for n in range(1, 6):
            x_n = [[1, Fraction(1, n)], [Fraction(1, n), Fraction(1, n * n)]]
            y_n = [[Fraction(1, n * n), 0], [0, 0]]
            self.assertTrue(g2_equivalent(x_n, y_n))
        self.assertFalse(g2_equivalent([[1, 0], [0, 0]], [[0, 0], [0, 0]]))
        self.assertFalse(g2_equivalent([[1, 0], [0, 0]], [[2, 0], [0, 0]]))

    def test_rank_one_forms_reduce_to_a_segment(self):
        for (p, q), k in [((1, 1), 1), ((2, 3), 1), ((3, -2), 2), ((0, 1), 5), ((1, 0), Fraction(1, 3)), ((-4, 7), 1)]:
            form = QuadForm.from_rows([[k * p * p, k * p * q], [k * p * q, k * q * q]])
            reduction = classify_g2(form)
            self.assertEqual(reduction.kind, G2Class.D3)
            self.assertEqual(reduction.reduced, QuadForm.from_rows([[k, 0], [0, 0]]))
            self.assertEqual(exact.det(reduction.transform), 1)
            self.assertEqual(form.transform(reduction.transform), reduction.reduced)

    def test_selling_parameters(self):
        self.assertEqual(selling_parameters([[1, 0], [0, 1]]), (0, 1, 1))
        self.assertEqual(selling_parameters(A2), (1, 1, 1))

    def test_errors(self):
        with self.assertRaises(FormError):
            classify_g2([[1, 2], [2, 1]])
        with self.assertRaises(FormError):
            classify_g2([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_json(self):
        data = classify_g2([[1, 0], [0, 1]]).to_json()
        self.assertEqual(data['class'], 'D2_square')
        self.assertEqual(data['reduced'], [['1', '0'], ['0', '1']])


class ConeMembershipTests(SimpleTestCase):
    def test_principal_cone(self):
        cone = zonotopal_cone(u23_matrix())
        self.assertEqual(cone_membership(A2, cone), [1, 1, 1])
        self.assertEqual(cone_membership([[1, 0], [0, 1]], cone), [1, 1, 0])
        self.assertIsNone(cone_membership([[1, 1], [1, 1]], cone))

    def test_mk4_cone(self):
        cone = zonotopal_cone(mk4_matrix())
        form = [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]
        coefficients = cone_membership(form, cone)
        self.assertEqual(len(coefficients), 6)
        self.assertTrue(all(c >= 0 for c in coefficients))

    def test_dependent_rays(self):
        rays = zonotopal_cone(u23_matrix()).rays + (((1, 1), (1, 1)),)
        with self.assertRaisesMessage(MatroidError, 'not a simplicial cone'):
            cone_membership(A2, ZonotopalCone(rays))

    def test_wrong_dimension(self):
        with self.assertRaises(FormError):
            cone_membership([[1]], zonotopal_cone(u23_matrix()))
