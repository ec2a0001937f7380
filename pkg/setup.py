# -*- coding: utf-8 -*-

# This code is part of mlcf.
#
# (C) Copyright the mlcf developers 2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
#
# Any modifications or derivative works of this code must retain this
# copyright notice, and modified files need to carry a notice indicating
# that they have been altered from the originals.

import os
import setuptools


requirements = [
    "numpy>=1.17",
    "scipy>=1.7",
    "scikit-learn>=0.22",
    "joblib>=0.14",
    "setuptools>=40.1.0",
]


version_path = os.path.abspath(
    os.path.join(os.path.dirname(__file__), 'mlcf', 'VERSION.txt'))
with open(version_path, 'r') as fd:
    version = fd.read().rstrip()

README_PATH = os.path.join(os.path.abspath(os.path.dirname(__file__)),
                           'README.md')
with open(README_PATH) as readme_file:
    README = readme_file.read()


setuptools.setup(
    name="mlcf",
    version=version,
    description="Multilevel control functionals for integration of costly models",
    long_description=README,
    long_description_content_type='text/markdown',
    author="mlcf developers",
    license="Apache 2.0",
    classifiers=[
        "Environment :: Console",
        "License :: OSI Approved :: Apache Software License",
        "Intended Audience :: Science/Research",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: MacOS",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering",
    ],
    keywords="monte carlo multilevel control variates stein kernel",
    packages=setuptools.find_packages(exclude=['test*']),
    package_data={
        'mlcf': ['VERSION.txt'],
        'mlcf.harness': ['presets/*.json'],
        'mlcf.logging': ['logging.yaml'],
        'mlcf.models': ['data/*.csv'],
    },
    extras_require={
        'jit': ['numba'],
    },
    entry_points={
        'console_scripts': ['mlcf=mlcf.harness.cli:main'],
    },
    install_requires=requirements,
    include_package_data=True,
    python_requires=">=3.7",
    zip_safe=False
)
