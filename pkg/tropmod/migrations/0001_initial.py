# Generated by Django 4.2.9 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='PosetSnapshot',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('moduli', 'Moduli poset P_g'), ('schottky', 'Schottky poset A_g^cogr')], max_length=20)),
                ('genus', models.PositiveSmallIntegerField()),
                ('fvector', models.JSONField()),
                ('payload', models.JSONField(help_text='Canonical JSON export of the poset')),
                ('digest', models.CharField(help_text='SHA-256 of the canonical JSON text', max_length=64)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['kind', 'genus'],
            },
        ),
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('genus_max', models.PositiveSmallIntegerField()),
                ('seed', models.IntegerField(default=0)),
                ('report', models.TextField()),
                ('digest', models.CharField(max_length=64)),
                ('passed', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.AddConstraint(
            model_name='posetsnapshot',
            constraint=models.UniqueConstraint(fields=('kind', 'genus'), name='unique_snapshot_per_kind_genus'),
        ),
    ]
