from codecs import open
from os import path

from setuptools import find_packages, setup

import ruleout

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'DESCRIPTION.rst'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='ruleout',

    # Versions should comply with PEP440.  For a discussion on single-sourcing
    # the version across setup.py and the project code, see
    # https://packaging.python.org/en/latest/single_source_version.html
    version=ruleout.version,

    description='Decision metrics and paired inference for AI rule-out '
                'triage of screening exams',
    long_description=long_description,

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        # How mature is this project? Common values are
        #   3 - Alpha
        #   4 - Beta
        #   5 - Production/Stable
        'Development Status :: 4 - Beta',

        # Indicate who your project is intended for
        'Intended Audience :: Science/Research',
        'Intended Audience :: Healthcare Industry',
        'Topic :: Scientific/Engineering :: Medical Science Apps.',

        # Pick your license as you wish (should match "license" above)
        'License :: OSI Approved :: Apache Software License',

        # Specify the Python versions you support here. In particular, ensure
        # that you indicate whether you support Python 2, Python 3 or both.
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
    ],

    # What does your project relate to?
    keywords='screening triage rule-out roc utility bootstrap',

    # You can just specify the packages manually here if your project is
    # simple. Or you can use find_packages().
    packages=find_packages(exclude=['tests', 'cli']),

    python_requires='>=3.9',

    install_requires=[
        'jsonschema>=2.4, <5.0',
        'numpy>=1.17, <3.0',
        'pager>=3.3, <4.0',
        'pygments>=2.0, <3.0',
        'scipy>=1.4, <2.0',
        'toml>=0.9, <1.0',
    ],

    package_data={
        'ruleout': [
            'data/config-schema/*.json',
            'data/curves/*.csv',
            'data/studies/*.json',
        ],
    },
)
