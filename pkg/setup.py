#! /usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages
import os

# Set the package release version
major = 0
minor = 1
patch = 0

# Set the package details
name = 'mpmerge'
version = '.'.join(str(value) for value in (major, minor, patch))
author = 'mpmerge developers'
description = 'Training-free token merging with Mutual Pair Merging.'
license = 'MIT'

# Set the package classifiers
python_versions_supported = ['3.8', '3.9', '3.10', '3.11']
os_platforms_supported = ['Unix', 'MacOS']

lc_str = 'License :: OSI Approved :: {0} License'
ln_str = 'Programming Language :: Python'
py_str = 'Programming Language :: Python :: {0}'
os_str = 'Operating System :: {0}'

classifiers = (
    [lc_str.format(license)]
    + [ln_str]
    + [py_str.format(ver) for ver in python_versions_supported]
    + [os_str.format(ops) for ops in os_platforms_supported]
)

# Source package description from README.md
this_directory = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

# Source package requirements from requirements.txt
with open('requirements.txt') as open_file:
    install_requires = open_file.read()

# Source test requirements from develop.txt
with open('develop.txt') as open_file:
    tests_require = open_file.read()


setup(
    name=name,
    author=author,
    version=version,
    license=license,
    description=description,
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['mpm_oracle', 'mpm_oracle.*']),
    install_requires=install_requires,
    python_requires='>=3.8',
    setup_requires=['pytest-runner'],
    tests_require=tests_require,
    extras_require={'develop': tests_require},
    entry_points={
        'console_scripts': ['mpmerge=mpmerge.bench.cli:main'],
    },
    classifiers=classifiers,
)
