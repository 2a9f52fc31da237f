"""Hypothesis strategies for field elements (seeded through the library sampler)."""
import random

from hypothesis import strategies as st

from inflatorkit import fields as F
from inflatorkit.fields import FieldId

FIELDS = [FieldId.Q, FieldId.QI, FieldId.QT, FieldId.QIT, FieldId.HAHN]


def elements(field, complexity=2):
    return st.integers(0, 2**32).map(
        lambda s: F.random_element(field, random.Random(s), complexity))


def nonzero(field, complexity=2):
    return elements(field, complexity).filter(lambda x: x != 0)
