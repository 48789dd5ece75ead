# -*- coding: utf-8 -*-
from setuptools import setup

# This is also defined in simduel/__init__.py and must be
# updated in both places.
MY_VERSION = '0.1.0'

setup(
    name='simduel',
    packages=['simduel'],
    version=MY_VERSION,
    description='Simple dueling-bandit simulations for Python',
    long_description='SimDuel makes it easy to simulate adversarial dueling '
                     'bandits in Python. It implements Dueling-EXP3, its '
                     'high-probability variant and Borda-Confidence-Bound, '
                     'generates adversarial preference-matrix sequences '
                     'including hard lower-bound instances, and records '
                     'Borda regret into Pandas DataFrames and CSV-files.',
    long_description_content_type="text/markdown",
    author='SimDuel',
    license='MIT',
    keywords=['dueling bandits', 'online learning', 'borda score'],
    python_requires='>=3.11',
    install_requires=[
        'pandas',
        'numpy>=1.22',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['simduel=simduel.cli:main'],
    },
)
