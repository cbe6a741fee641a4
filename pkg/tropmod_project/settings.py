"""
Django settings for tropmod_project project.
"""

import os
from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('DJANGO_SECRET_KEY', default='tropmod-insecure-local-key')

DEBUG = config('DJANGO_DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'tropmod',
]


# Database
# SQLite unless DB_ENGINE=postgresql, then the DB_* variables apply.
DB_ENGINE = config('DB_ENGINE', default='sqlite3')

if DB_ENGINE == 'postgresql':
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.postgresql',
            'NAME': config('DB_NAME', default='tropmod_db'),
            'USER': config('DB_USER', default='tropmod_user'),
            'PASSWORD': config('DB_PASSWORD', default='tropmod_password'),
            'HOST': config('DB_HOST', default='db'),
            'PORT': config('DB_PORT', default='5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': config('DB_NAME', default=str(BASE_DIR / 'tropmod.sqlite3')),
        }
    }


# Cache for computed posets and certificate tables
TROPMOD_CACHE_DIR = config('TROPMOD_CACHE_DIR', default=str(BASE_DIR / '.tropmod-cache'))

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': TROPMOD_CACHE_DIR,
        'TIMEOUT': None,
    }
}


# Worker pool size behind --jobs; 0 means all available cores
TROPMOD_JOBS = config('TROPMOD_JOBS', default=0, cast=int) or (os.cpu_count() or 1)

# Genus-6 enumeration and genus-5 posets in the test suite
TROPMOD_SLOW_TESTS = config('TROPMOD_SLOW_TESTS', default=False, cast=bool)


# Logging
TROPMOD_LOG_LEVEL = config('TROPMOD_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'tropmod': {
            'handlers': ['console'],
            'level': TROPMOD_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Internationalization
LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
