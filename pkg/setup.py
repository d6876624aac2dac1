#
# SPDX-FileCopyrightText: 2024 collisionengine developers
#
# SPDX-License-Identifier: GPL-3.0-or-later
#

"""
Setup file for collisionengine
"""

import runpy
import setuptools

version_meta = runpy.run_path("./collisionengine/version.py")
VERSION = version_meta["__version__"]

with open("README.md", "r", encoding="utf8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="collisionengine",
    version=VERSION,
    author="collisionengine developers",
    description="Quantum battery and Otto engine driven by Haar-random collisions",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
    package_dir={"collisionengine": "collisionengine"},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License"
        + " v3 or later (GPLv3+)",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    install_requires=["numpy>=1.22", "scipy>=1.10"],
    entry_points={"console_scripts": ["collisionengine=collisionengine.cli:main"]},
    python_requires=">=3.8",
)
