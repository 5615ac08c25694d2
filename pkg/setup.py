#!/usr/bin/env python
# -*- coding: utf-8 -*-
import os

from setuptools import find_packages, setup

here = os.path.abspath(os.path.dirname(__file__))

# To update the package version number, edit gaussdens/__version__.py
version = {}
with open(os.path.join(here, 'gaussdens', '__version__.py')) as f:
    exec(f.read(), version)

with open('README.rst') as readme_file:
    readme = readme_file.read()

setup(
    name='gaussdens',
    version=version['__version__'],
    description=(
        "Gaussian densities, heat kernels and singularities of curve"
        " shortening flow"),
    long_description=readme + '\n\n',
    packages=find_packages(include=['gaussdens', 'gaussdens.*']),
    package_data={'gaussdens.formats': ['schemas.yaml']},
    include_package_data=True,
    license="Apache Software License 2.0",
    zip_safe=False,
    keywords='gaussdens',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    install_requires=[
        'jsonschema',
        'numpy>=1.21',
        'openapi-schema-validator',
        'ruamel.yaml<=0.16.10',
        'scipy',
        'PyYAML',
        'yatiml'
    ],
    entry_points={
        'console_scripts': [
            'gaussdens = gaussdens.cli.main:main',
        ],
    }
)
