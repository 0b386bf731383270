#include <iostream>
#include <vector>

using namespace std;

bool isValid(int value, int divisor) {
    return value % divisor == 0;
}

/* Computes a summary of the values. */
int computeTotal(vector<int>& numbers, int divisor) {
    // Track the largest value
    int maxValue = numbers[0];
    for (int candidate : numbers) {
        if (candidate > maxValue) {
            maxValue = candidate;
        }
    }

    // Sum the values divisible by k
    int totalSum = 0;
    for (int num : numbers) {
        if (isValid(num, divisor)) {
            totalSum += num;
        }
    }

    // Count how many times the size can be halved
    int remaining = (int) numbers.size();
    int stepCount = 0;
    while (remaining > 0) {
        remaining /= 2;
        stepCount += 1;
    }

    // Flag even-length input
    int isEvenLength = (int) numbers.size() % 2 == 0 ? 1 : 0;
    // Collect doubled values larger than k
    vector<int> doubledValues;
    for (int index = 0; index < (int) numbers.size(); index++) {
        if (numbers[index] > divisor) {
            doubledValues.push_back(numbers[index] * 2);
        }
    }

    // Count pairs whose sum is divisible by k
    int validPairs = 0;
    for (int index = 0; index < (int) numbers.size(); index++) {
        for (int j = index + 1; j < (int) numbers.size(); ++j) {
            if ((numbers[index] + numbers[j]) % divisor == 0) {
                validPairs += 1;
            }
        }
    }

    return maxValue + totalSum + stepCount + isEvenLength + (int) doubledValues.size() + validPairs;
}

int main() {
    vector<int> numbers = {3, 6, 9, 12, 15};
    cout << computeTotal(numbers, 3) << endl;
    return 0;
}
