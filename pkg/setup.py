# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from setuptools import setup, find_packages
import pathlib

here = pathlib.Path(__file__).parent.resolve()

# Get the long description from the README file
long_description = (here / 'README.md').read_text(encoding='utf-8')

INSTALL_REQS = [
        'numpy',
        'scipy',
        'pandas',
        'matplotlib',
    ]

setup(
    name = 'hetcal',
    version = '1.0.0',
    description = 'Simulator-backed calibration toolkit for the detection efficiency of balanced heterodyne receivers: closed-form receiver model, spectrum-analyzer trace synthesis, spectral-ratio efficiency estimation with a full uncertainty budget, and validation sweeps.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author = 'The hetcal Authors',
    classifiers = [
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3 :: Only'
    ],
    keywords = ['heterodyne detection', 'quantum efficiency', 'metrology', 'calibration', 'uncertainty budget', 'spectrum analyzer', 'equivalent noise bandwidth', 'simulation'],
    package_dir = {"":"src"},
    packages = find_packages(where = 'src'),
    python_requires='>=3.8',
    install_requires = INSTALL_REQS,
    entry_points = {
        'console_scripts': ['hetcal=hetcal.cli:main'],
    },
)
