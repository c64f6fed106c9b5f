#!/usr/bin/env python

from setuptools import find_packages, setup

import os
import subprocess
import time

version_file = 'jointsparse/version.py'


def readme():
    with open('README.md', encoding='utf-8') as f:
        content = f.read()
    return content


def get_git_hash():

    def _minimal_ext_cmd(cmd):
        env = {k: os.environ[k] for k in ['SYSTEMROOT', 'PATH', 'HOME'] if k in os.environ}
        env.update(LANGUAGE='C', LANG='C', LC_ALL='C')
        return subprocess.Popen(cmd, stdout=subprocess.PIPE, env=env).communicate()[0]

    try:
        sha = _minimal_ext_cmd(['git', 'rev-parse', 'HEAD']).strip().decode('ascii')
    except OSError:
        sha = 'unknown'
    return sha


def get_hash():
    if os.path.exists('.git'):
        return get_git_hash()[:7]
    return 'unknown'


def write_version_py():
    content = """# GENERATED VERSION FILE
# TIME: {}
__version__ = '{}'
__gitsha__ = '{}'
version_info = ({})
"""
    with open('VERSION', 'r') as f:
        short_version = f.read().strip()
    version_info = ', '.join([x if x.isdigit() else f'"{x}"' for x in short_version.split('.')])
    with open(version_file, 'w') as f:
        f.write(content.format(time.asctime(), short_version, get_hash(), version_info))


def get_version():
    with open(version_file, 'r') as f:
        exec(compile(f.read(), version_file, 'exec'))
    return locals()['__version__']


def get_requirements(filename='requirements.txt'):
    here = os.path.dirname(os.path.realpath(__file__))
    with open(os.path.join(here, filename), 'r') as f:
        requires = [line.strip() for line in f.readlines() if line.strip()]
    return requires


if __name__ == '__main__':
    write_version_py()
    setup(
        name='jointsparse',
        version=get_version(),
        description='Joint time-frequency sparse recovery: solvers, dual certificates and phase transitions',
        long_description=readme(),
        long_description_content_type='text/markdown',
        keywords='compressed sensing, basis pursuit, uncertainty principle, phase transition',
        include_package_data=True,
        packages=find_packages(exclude=('options', 'scripts', 'tests', 'results')),
        classifiers=[
            'Development Status :: 3 - Alpha',
            'Operating System :: OS Independent',
            'Programming Language :: Python :: 3',
            'Programming Language :: Python :: 3.8',
            'Programming Language :: Python :: 3.9',
        ],
        python_requires='>=3.8',
        install_requires=get_requirements(),
        extras_require={'tests': ['pytest']},
        entry_points={'console_scripts': ['jointsparse=jointsparse.cli:main']},
        zip_safe=False)
