"""Fragment recognizer corpus: SMT-LIB text and the exact expected verdict.

``None`` means the formula is a member; otherwise the expected reason.
"""
from apfrag.fragment import Reason

R = Reason
CORPUS = [
    # members
    ("(forall ((j Int) (jj Int)) (=> (<= j jj) (<= (select a j) (select a jj))))", None),
    ("(forall ((i Int)) (< (select a i) (select b k)))", None),
    ("(forall ((j Int)) (not (< (select a l) (select b j))))", None),
    ("(forall ((j Int)) (=> (and (<= 0 j) (<= j k)) (= (select a j) 0)))", None),
    ("(forall ((j Int)) (=> (or (= j k) (<= l j)) (< (select b j) (+ (select a j) 1))))", None),
    ("(forall ((j Int) (jj Int)) (=> (= j jj) (= (select a j) (select b jj))))", None),
    ("(forall ((j Int)) (=> (<= j (select a k)) (<= (select (store a k 0) j) 3)))", None),
    ("(forall ((j Int)) (=> (< k 0) (= (select a j) (select b j))))", None),
    ("(forall ((j Int)) (=> (< (select a j) 0) (< (select b j) 0)))", None),
    ("(and (< (diff a b) 0) (forall ((j Int)) (<= (select a j) (select b j))))", None),
    ("(not (forall ((j Int)) (<= (select a j) 0)))", None),
    ("(= (store a k 0) b)", None),
    ("(exists ((j Int)) (< (select a j) 0))", None),
    ("(forall ((j Int)) (=> (<= j (diff a b)) (= (select a j) (select b j))))", None),
    # rejections
    ("(exists ((i Int)) (forall ((j Int)) (<= (select a j) (select a i))))", R.QUANTIFIER_ALTERNATION),
    ("(exists ((j Int)) (forall ((i Int)) (< (select a i) (select b j))))", R.QUANTIFIER_ALTERNATION),
    ("(forall ((i Int)) (exists ((j Int)) (< (select a i) (select b j))))", R.QUANTIFIER_ALTERNATION),
    ("(forall ((j Int)) (=> (not (<= j k)) (= (select a j) 0)))", R.NEGATED_GUARD_LITERAL),
    ("(forall ((j Int)) (=> (and (<= 0 j) (not (<= j k))) (= (select a j) 0)))", R.NEGATED_GUARD_LITERAL),
    ("(forall ((j Int)) (=> (=> (<= j k) (<= 0 j)) (= (select a j) 0)))", R.NEGATED_GUARD_LITERAL),
    ("(forall ((j Int)) (=> (<= (+ j 1) k) (= (select a j) 0)))", R.ILLEGAL_GUARD_LITERAL_SHAPE),
    ("(forall ((j Int)) (=> (<= j (select a j)) (= (select a j) 0)))", R.ILLEGAL_GUARD_LITERAL_SHAPE),
    ("(forall ((j Int) (jj Int)) (=> (< j jj) (<= (select a j) (select a jj))))", R.ILLEGAL_GUARD_LITERAL_SHAPE),
    ("(forall ((j Int)) (= (select a (select b j)) 0))", R.NESTED_SELECT_ON_QUANTIFIED_VAR),
    ("(forall ((j Int)) (= (select (store a j 0) 1) 0))", R.QUANTIFIED_VAR_IN_STORE_OR_DIFF),
    ("(forall ((j Int)) (< (diff (store a j 1) b) 0))", R.QUANTIFIED_VAR_IN_STORE_OR_DIFF),
    ("(forall ((j Int)) (= (select a j) j))", R.QUANTIFIED_VAR_OUTSIDE_SELECT),
    ("(forall ((j Int)) (= (select a (+ j 1)) 0))", R.QUANTIFIED_VAR_OUTSIDE_SELECT),
]
