import math

import pytest
from hypothesis import given, strategies as st

from crs import vectorspace as vs
from crs.extract import CorpusStats, tfidf_vector
from crs.ingest import ResumeDoc
from crs.textpipe import TokenizedDoc, preprocess

vectors = st.dictionaries(
    st.sampled_from(["a", "b", "c", "d", "e"]),
    st.floats(min_value=0.001, max_value=10.0, allow_nan=False),
    max_size=5,
)


def make_doc(tokens):
    return TokenizedDoc("d", tuple(tokens), ((0, len(tokens)),) if tokens else ())


class TestVocabulary:
    def test_union_sorted(self):
        vocab = vs.build_vocabulary([make_doc(["b", "a"]), make_doc(["a", "c"])], frozenset())
        assert vocab.terms == ("a", "b", "c")
        assert vocab.index == {"a": 0, "b": 1, "c": 2}

    def test_all_stopwords_is_error(self):
        with pytest.raises(vs.EmptyCorpusError):
            vs.build_vocabulary([make_doc(["the"])], frozenset({"the"}))

    def test_doc_order_invariant(self):
        docs = [make_doc(["x", "y"]), make_doc(["z"])]
        assert vs.build_vocabulary(docs, frozenset()) == vs.build_vocabulary(
            list(reversed(docs)), frozenset()
        )

    def test_empty_corpus(self):
        with pytest.raises(vs.EmptyCorpusError):
            vs.build_vocabulary([], frozenset())


class TestCosine:
    def test_identical_vectors(self):
        v = {"x": 2.0, "y": 1.0}
        assert vs.cosine_similarity(v, v) == pytest.approx(1.0)

    def test_disjoint_supports(self):
        assert vs.cosine_similarity({"x": 1.0}, {"y": 1.0}) == 0.0

    def test_hand_value(self):
        assert vs.cosine_similarity({"x": 1.0, "y": 1.0}, {"x": 1.0}) == pytest.approx(
            1 / math.sqrt(2)
        )

    def test_zero_norm_defined_as_zero(self):
        assert vs.cosine_similarity({}, {"x": 1.0}) == 0.0
        assert vs.cosine_similarity({}, {}) == 0.0

    @given(vectors, vectors)
    def test_symmetry_and_range(self, a, b):
        ab = vs.cosine_similarity(a, b)
        assert ab == pytest.approx(vs.cosine_similarity(b, a))
        assert -1e-12 <= ab <= 1 + 1e-12

    @given(vectors, vectors, st.floats(min_value=0.01, max_value=100))
    def test_scale_invariance(self, a, b, c):
        scaled = {t: c * w for t, w in a.items()}
        assert vs.cosine_similarity(scaled, b) == pytest.approx(
            vs.cosine_similarity(a, b), abs=1e-9
        )

    @given(vectors, vectors, st.floats(min_value=0.01, max_value=1.0))
    def test_rotating_toward_target_never_decreases_similarity(self, a, b, lam):
        if not a or not b:
            return
        mixed = {t: (1 - lam) * a.get(t, 0.0) + lam * b.get(t, 0.0) for t in set(a) | set(b)}
        mixed = {t: w for t, w in mixed.items() if w > 0.0}
        assert vs.cosine_similarity(mixed, b) >= vs.cosine_similarity(a, b) - 1e-9


class TestItemProfiles:
    def test_single_course_matches_direct_tfidf(self, catalog, taxonomy):
        course = catalog[0]
        doc = preprocess(course.course_id, course.text)
        stats = CorpusStats.from_docs([doc])
        [profile] = vs.build_item_profiles([course], stats, taxonomy)
        assert profile.vector == tfidf_vector(doc, stats)

    def test_identical_texts_have_cosine_one(self, catalog, taxonomy):
        twin = type(catalog[0])("C99", "Twin", catalog[0].description,
                                catalog[0].learning_outcomes, "undergraduate")
        courses = [catalog[0], twin, catalog[1]]
        docs = [preprocess(c.course_id, c.text) for c in courses]
        stats = CorpusStats.from_docs(docs)
        profiles = vs.build_item_profiles(courses, stats, taxonomy)
        assert profiles[0].vector == profiles[1].vector
        assert vs.cosine_similarity(profiles[0].vector, profiles[1].vector) == pytest.approx(1.0)

    def test_ten_course_catalog_matches_oracle(self, catalog, taxonomy):
        docs = [preprocess(c.course_id, c.text) for c in catalog]
        stats = CorpusStats.from_docs(docs)
        profiles = vs.build_item_profiles(catalog, stats, taxonomy)
        assert len(profiles) == len(catalog)
        for profile, doc in zip(profiles, docs):
            assert profile.vector == tfidf_vector(doc, stats)


class TestUserProfile:
    def test_single_completed_course_reproduces_direction(self, catalog, taxonomy):
        docs = [preprocess(c.course_id, c.text) for c in catalog]
        stats = CorpusStats.from_docs(docs)
        profiles = vs.build_item_profiles(catalog, stats, taxonomy)
        user = vs.build_user_profile("u", [catalog[0]], None, profiles, stats, taxonomy)
        assert vs.cosine_similarity(user.vector, profiles[0].vector) == pytest.approx(1.0)
        assert user.completed_courses == {"C01"}

    def test_resume_only_skills(self, catalog, taxonomy):
        docs = [preprocess(c.course_id, c.text) for c in catalog]
        stats = CorpusStats.from_docs(docs)
        profiles = vs.build_item_profiles(catalog, stats, taxonomy)
        resume = ResumeDoc("r1", "Python and SQL developer.")
        user = vs.build_user_profile("u", [], resume, profiles, stats, taxonomy)
        assert user.owned_skills.skills == {"python", "sql"}

    def test_merge_support_is_union(self, taxonomy):
        from crs.ingest import CourseRecord

        c1 = CourseRecord("A", "A", "alpha beta", "", "undergraduate")
        docs = [preprocess("A", "alpha beta"), preprocess("r", "gamma delta")]
        stats = CorpusStats(n_docs=2, doc_freq={"alpha": 1, "beta": 1, "gamma": 1, "delta": 1})
        profiles = vs.build_item_profiles([c1], stats, taxonomy)
        resume = ResumeDoc("r", "gamma delta")
        user = vs.build_user_profile("u", [c1], resume, profiles, stats, taxonomy)
        assert set(user.vector) == {"alpha", "beta", "gamma", "delta"}

    def test_neither_source_is_error(self, taxonomy):
        stats = CorpusStats(n_docs=1, doc_freq={})
        with pytest.raises(ValueError):
            vs.build_user_profile("u", [], None, [], stats, taxonomy)
