"""scikit-learn style wrappers around the functional API.

The fan is a constructor parameter, so estimators can be cloned and
inspected with ``get_params``.  ``fit`` validates the fan and computes the
obstruction table and class lattice once; ``predict`` / ``transform`` then
act on rows of class points (``rho`` columns) or divisors (``|I|``
columns).  All numbers stay exact: inputs are coerced with
:func:`~toricqample.validation.check_rational_array` and fractional outputs
are returned in ``object`` arrays of :class:`fractions.Fraction`.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .asymptotic import hhat
from .cohomology import cohomology
from .fan import class_lattice, validate
from .nerve import DEFAULT_MAX_RAYS, obstruction_table
from .qample import _check_q, ampleness_level, is_q_ample, q_ample_cone
from .validation import check_fan, check_rational_array


class _FanEstimator(BaseEstimator):
    """Shared ``fit``: validation, obstruction table and class lattice."""

    def __init__(self, fan=None, basis=None, max_rays=DEFAULT_MAX_RAYS, cache_dir=None, n_jobs=None, seed=0):
        self.fan = fan
        self.basis = basis
        self.max_rays = max_rays
        self.cache_dir = cache_dir
        self.n_jobs = n_jobs
        self.seed = seed

    def fit(self, X=None, y=None):
        """Prepare the fan.  ``X`` and ``y`` are ignored."""
        if self.fan is None:
            raise ValueError(f"{type(self).__name__} needs a fan")
        fan = check_fan(self.fan)
        self.validation_ = validate(fan, seed=self.seed)
        self.fan_ = fan
        self.table_ = obstruction_table(fan, self.max_rays, self.cache_dir, self.n_jobs)
        self.lattice_ = class_lattice(fan, self.basis)
        return self

    def _classes(self, X):
        check_is_fitted(self, "lattice_")
        return check_rational_array(X, self.lattice_.rank)

    def _divisors(self, X):
        check_is_fitted(self, "lattice_")
        return check_rational_array(X, self.fan_.n_rays)


class QAmpleClassifier(ClassifierMixin, _FanEstimator):
    """Predict whether class points are q-ample.

    Parameters
    ----------
    fan : Fan, dict or path
        A complete simplicial projective fan.
    q : int
        Cohomological degree bound, ``0 <= q <= dim``.
    basis : list of divisors, optional
        Divisors whose classes are the coordinates of ``N^1``.
    max_rays, cache_dir, n_jobs :
        Passed to :func:`~toricqample.nerve.obstruction_table`.
    seed : int
        Seed for the point-location check in :func:`~toricqample.fan.validate`.

    Attributes
    ----------
    cone_ : QAmpleCone
        ``Amp_q`` as arrangement cells (computed in ``fit``).
    classes_ : ndarray
        ``[False, True]``.
    """

    def __init__(self, fan=None, q=0, basis=None, max_rays=DEFAULT_MAX_RAYS, cache_dir=None, n_jobs=None, seed=0):
        super().__init__(fan, basis, max_rays, cache_dir, n_jobs, seed)
        self.q = q

    def fit(self, X=None, y=None):
        super().fit(X, y)
        _check_q(self.fan_, self.q)
        self.cone_ = q_ample_cone(self.fan_, self.q, self.table_, self.lattice_)
        self.classes_ = np.array([False, True])
        self.n_features_in_ = self.lattice_.rank
        return self

    def predict(self, X):
        return np.array(
            [is_q_ample(self.fan_, c, self.q, self.table_, self.lattice_) for c in self._classes(X)],
            dtype=bool,
        )


class AmplenessLevel(TransformerMixin, _FanEstimator):
    """Map class points to the least ``q`` for which they are q-ample."""

    def fit(self, X=None, y=None):
        super().fit(X, y)
        self.n_features_in_ = self.lattice_.rank
        return self

    def transform(self, X):
        levels = [ampleness_level(self.fan_, c, self.table_, self.lattice_) for c in self._classes(X)]
        return np.array(levels, dtype=int).reshape(-1, 1)


class LineBundleCohomology(TransformerMixin, _FanEstimator):
    """Map Cartier divisors (``|I|`` columns) to ``h^0, ..., h^n``."""

    def fit(self, X=None, y=None):
        super().fit(X, y)
        self.n_features_in_ = self.fan_.n_rays
        return self

    def transform(self, X):
        rows = [cohomology(self.fan_, d, table=self.table_).dims for d in self._divisors(X)]
        return np.array(rows, dtype=object).reshape(-1, self.fan_.dim + 1)


class AsymptoticCohomology(TransformerMixin, _FanEstimator):
    """Map rational divisors to ``hhat^0, ..., hhat^n`` as exact Fractions."""

    def fit(self, X=None, y=None):
        super().fit(X, y)
        self.n_features_in_ = self.fan_.n_rays
        return self

    def transform(self, X):
        n = self.fan_.dim
        rows = [
            [hhat(self.fan_, d, i, self.table_).value for i in range(n + 1)]
            for d in self._divisors(X)
        ]
        return np.array(rows, dtype=object).reshape(-1, n + 1)
